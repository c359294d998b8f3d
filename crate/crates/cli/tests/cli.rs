use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dtab_core::DecisionTable;

fn dtab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SQUARE: &str = "alphabet: 0 1\nattributes: x1 x2\n0 0 -> 0\n0 1 -> 1\n1 0 -> 2\n1 1 -> 3\n";

#[test]
fn analyze_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.dtab", SQUARE);
    let o = dtab(&["analyze", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("N=4 cl=4 dim=2 R=2 I=2"));
    assert!(out.contains("reduct=x1,x2\n"));
    assert!(out.contains("witness={0,1} {0,1}\n"));
}

#[test]
fn analyze_constant_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "flat.dtab",
        "alphabet: 0 1\nattributes: a b\n0 0 -> 5\n1 1 -> 5\n",
    );
    let o = dtab(&["analyze", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(" R=0 "));
}

#[test]
fn analyze_json_and_reduct_listing() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "t.dtab",
        "alphabet: 0 1\nattributes: a b c\n0 0 0 -> 0\n1 1 1 -> 1\n",
    );
    let o = dtab(&["analyze", &f, "--format", "json", "--all-reducts", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reduct_cardinality"], 1);
    assert_eq!(v["reduct"], serde_json::json!(["a"]));
    assert_eq!(v["all_reducts"]["truncated"], true);
    assert_eq!(v["all_reducts"]["reducts"].as_array().unwrap().len(), 2);

    let o = dtab(&["analyze", &f, "--all-reducts", "10"]);
    let out = stdout(&o);
    assert!(out.contains("reducts=3 truncated=false"));
    assert!(out.contains("reduct_3=c"));
}

#[test]
fn malformed_table_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.dtab",
        "alphabet: 0 1\nattributes: a b\n0 0 -> 0\n0 2 -> 1\n",
    );
    let o = dtab(&["analyze", &f]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn gen_families() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let lines = write(d, "axes.lines", "x 1 0 0\ny 0 1 0\n");
    let polys = write(d, "p.poly", "x 0 1\ny -1 1\n");
    let cases: [(&[&str], usize, usize); 4] = [
        (&["gen", "lines", &lines], 4, 4),
        (&["gen", "polys", &polys], 5, 5),
        (&["gen", "cube", "3"], 8, 8),
        (&["gen", "shatter", "2"], 7, 7),
    ];
    for (args, rows, classes) in cases {
        let out = d.join("out.dtab");
        let mut full = args.to_vec();
        full.extend(["-o", out.to_str().unwrap()]);
        let o = dtab(&full);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        let t = DecisionTable::parse_dtab(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!((t.num_rows(), t.num_classes()), (rows, classes), "{args:?}");
    }
}

#[test]
fn gen_decision_modes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = dtab(&["gen", "cube", "3", "--decisions", "random:2"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--seed"));

    let a = dtab(&["gen", "cube", "4", "--decisions", "random:3", "--seed", "9"]);
    let b = dtab(&["gen", "cube", "4", "--decisions", "random:3", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let o = dtab(&["gen", "cube", "2", "--decisions", "constant:4"]);
    let t = DecisionTable::parse_dtab(&stdout(&o)).unwrap();
    assert!(t.rows().iter().all(|r| r.decision == 4));

    let ds = write(d, "ds.txt", "1 1 2\n3\n");
    let o = dtab(&["gen", "cube", "2", "--decisions", &format!("file:{ds}")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = DecisionTable::parse_dtab(&stdout(&o)).unwrap();
    assert_eq!(t.num_classes(), 3);

    let o = dtab(&["gen", "cube", "2", "--decisions", "sometimes"]);
    assert!(!o.status.success());
}

#[test]
fn gen_rejects_degenerate_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let lines = write(d, "bad.lines", "z 0 0 1\n");
    assert!(!dtab(&["gen", "lines", &lines]).status.success());
    let polys = write(d, "zero.poly", "z 0\n");
    assert!(!dtab(&["gen", "polys", &polys]).status.success());
    assert!(!dtab(&["gen", "shatter", "9"]).status.success());
    let polys = write(d, "const.poly", "c 3\nx 0 1\n");
    let o = dtab(&["gen", "polys", &polys]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("constant columns: c"));
}

#[test]
fn verify_empty_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "empty.json", "{}");
    let report = dir.path().join("report.json");
    let o = dtab(&["verify", &cfg, "-o", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v, serde_json::json!([]));
}

#[test]
fn verify_flags_corrupted_golden_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // One row of the square is missing.
    write(
        d,
        "golden.dtab",
        "alphabet: 0 1\nattributes: x1 x2\n0 0 -> 0\n0 1 -> 1\n1 0 -> 2\n",
    );
    let cfg = write(
        d,
        "cfg.json",
        r#"{"tables": [{"path": "golden.dtab", "expect": {"rows": 4, "reduct": 2, "shatter": 2}}]}"#,
    );
    let report = d.join("report.json");
    let o = dtab(&["verify", &cfg, "-o", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL expected_value table/golden.dtab/rows"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["holds"] == false && r["skipped"] == false));
}

#[test]
fn verify_names_bad_config_fields() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"caps": {"lines": 0}}"#);
    let o = dtab(&["verify", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("caps.lines"), "{}", stderr(&o));
    let cfg = write(
        dir.path(),
        "typo.json",
        r#"{"cubes": {"min_n": 1, "max": 3}}"#,
    );
    let o = dtab(&["verify", &cfg]);
    assert!(stderr(&o).contains("cubes"), "{}", stderr(&o));
}

#[test]
fn verify_shipped_config() {
    let cfg = configs().join("default.json");
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = dtab(&[
        "verify",
        cfg.to_str().unwrap(),
        "-o",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains(" fail=0\n"));
}

#[test]
fn nc_families() {
    let o = dtab(&[
        "nc", "--family", "lines", "--n", "3", "--budget", "2", "--seed", "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "n max_rows exact\n1 2 2\n2 4 4\n3 7 7\n");

    let o = dtab(&["nc", "--family", "cube", "--n", "3"]);
    assert_eq!(stdout(&o), "n max_rows\n1 2\n2 4\n3 8\n");

    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "p.poly", "x 0 1\ny -1 1\n");
    let o = dtab(&[
        "nc", "--family", "polys", "--n", "2", "--budget", "1", "--spec", &spec,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: usize = last.split(' ').nth(1).unwrap().parse().unwrap();
    assert!(v >= 5, "{last}");

    assert!(!dtab(&["nc", "--family", "lines", "--n", "40"])
        .status
        .success());
    assert!(!dtab(&["nc", "--family", "custom", "--n", "2"])
        .status
        .success());
}
