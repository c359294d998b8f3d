//! Batch verification: generate instances from a JSON config, run every
//! applicable check, and collect the reports in canonical order.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    derive_seed, empirical_nc, growth_checks, strengthened_log_bound_demo_capped, CheckReport,
    ClassDescriptor, Family, TableAnalysis,
};
use crate::error::{Error, Result};
use crate::lines::{
    build_line_table, general_position_cells, in_general_position, random_general_position_lines,
};
use crate::poly::{
    build_poly_table, random_poly_system, shatter_system_capped, total_distinct_roots, Sign,
};
use crate::reducts::brute_force_r;
use crate::shattering::{brute_force_i, Witness};
use crate::table::{random_table, Alphabet, DecisionMode, DecisionTable};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub random_tables: Option<RandomTablesConfig>,
    pub lines: Option<LinesConfig>,
    pub polys: Option<PolysConfig>,
    pub cubes: Option<CubesConfig>,
    pub shatter: Option<ShatterConfig>,
    pub growth: Vec<GrowthConfig>,
    pub tables: Vec<TableEntry>,
    pub caps: Caps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomTablesConfig {
    pub count: usize,
    pub alphabet_sizes: Vec<usize>,
    pub max_dim: usize,
    pub max_rows: usize,
    pub max_classes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinesConfig {
    pub min_lines: usize,
    pub max_lines: usize,
    pub instances_per_size: usize,
    pub decisions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolysConfig {
    pub systems: usize,
    pub max_polys: usize,
    pub max_degree: usize,
    pub decisions: Vec<String>,
    /// Exponent to test the power bound with, when one is declared.
    #[serde(default)]
    pub declared_dimension: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubesConfig {
    pub min_n: usize,
    pub max_n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShatterConfig {
    pub max_p: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthConfig {
    /// `lines`, `cube`, or `polys`.
    pub family: String,
    pub n: usize,
    #[serde(default = "one")]
    pub budget: usize,
    #[serde(default = "two")]
    pub max_degree: usize,
}

fn one() -> usize {
    1
}

fn two() -> usize {
    2
}

/// A table file to check, with optional expected values and class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub path: String,
    #[serde(default)]
    pub expect: Option<Expectation>,
    #[serde(default)]
    pub class: Option<ClassDescriptor>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Expectation {
    pub rows: Option<usize>,
    pub classes: Option<usize>,
    pub dim: Option<usize>,
    pub reduct: Option<usize>,
    pub shatter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    pub lines: usize,
    pub cube: usize,
    pub shatter: usize,
    pub polys: usize,
    pub brute_force_r_dim: usize,
    pub brute_force_i_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lines: crate::lines::DEFAULT_LINE_CAP,
            cube: crate::bounds::DEFAULT_DEMO_CAP,
            shatter: crate::poly::DEFAULT_SHATTER_CAP,
            polys: 8,
            brute_force_r_dim: 12,
            brute_force_i_dim: 8,
        }
    }
}

impl SuiteConfig {
    /// The shipped default suite.
    pub fn standard() -> Self {
        SuiteConfig {
            seed: 20_231_101,
            random_tables: Some(RandomTablesConfig {
                count: 1000,
                alphabet_sizes: vec![2, 3],
                max_dim: 10,
                max_rows: 40,
                max_classes: 8,
            }),
            lines: Some(LinesConfig {
                min_lines: 2,
                max_lines: 8,
                instances_per_size: 12,
                decisions: vec!["distinct".into(), "random:4".into()],
            }),
            polys: Some(PolysConfig {
                systems: 80,
                max_polys: 5,
                max_degree: 6,
                decisions: vec!["distinct".into(), "random:3".into()],
                declared_dimension: None,
            }),
            cubes: Some(CubesConfig {
                min_n: 1,
                max_n: 10,
            }),
            shatter: Some(ShatterConfig { max_p: 4 }),
            growth: vec![
                GrowthConfig {
                    family: "lines".into(),
                    n: 6,
                    budget: 3,
                    max_degree: 2,
                },
                GrowthConfig {
                    family: "cube".into(),
                    n: 10,
                    budget: 1,
                    max_degree: 2,
                },
                GrowthConfig {
                    family: "polys".into(),
                    n: 4,
                    budget: 4,
                    max_degree: 2,
                },
            ],
            tables: Vec::new(),
            caps: Caps::default(),
        }
    }

    /// Parses JSON, naming the offending field path on error.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: SuiteConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Config(format!("{path}: {}", e.inner()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: &str| Err(Error::Config(format!("{field}: {msg}")));
        let caps = &self.caps;
        for (field, v) in [
            ("caps.lines", caps.lines),
            ("caps.cube", caps.cube),
            ("caps.shatter", caps.shatter),
            ("caps.polys", caps.polys),
            ("caps.brute_force_r_dim", caps.brute_force_r_dim),
            ("caps.brute_force_i_dim", caps.brute_force_i_dim),
        ] {
            if v == 0 {
                return bad(field, "caps must be positive");
            }
        }
        if let Some(r) = &self.random_tables {
            if r.alphabet_sizes.is_empty() {
                return bad("random_tables.alphabet_sizes", "must not be empty");
            }
            if let Some(k) = r.alphabet_sizes.iter().find(|&&k| k < 2) {
                return bad(
                    "random_tables.alphabet_sizes",
                    &format!("alphabet size {k} < 2"),
                );
            }
            if r.max_dim == 0 || r.max_rows == 0 {
                return bad("random_tables", "max_dim and max_rows must be positive");
            }
            if r.max_classes < 1 {
                return bad("random_tables.max_classes", "must be at least 1");
            }
        }
        if let Some(l) = &self.lines {
            if l.min_lines > l.max_lines {
                return bad("lines.min_lines", "exceeds lines.max_lines");
            }
            if l.max_lines > caps.lines {
                return bad(
                    "lines.max_lines",
                    &format!("above caps.lines = {}", caps.lines),
                );
            }
            check_modes("lines.decisions", &l.decisions)?;
        }
        if let Some(p) = &self.polys {
            if p.max_polys == 0 || p.max_polys > caps.polys {
                return bad("polys.max_polys", &format!("must be in 1..={}", caps.polys));
            }
            if p.max_degree == 0 {
                return bad("polys.max_degree", "must be positive");
            }
            if p.declared_dimension == Some(0) {
                return bad("polys.declared_dimension", "must be at least 1");
            }
            check_modes("polys.decisions", &p.decisions)?;
        }
        if let Some(c) = &self.cubes {
            if c.max_n > caps.cube {
                return bad("cubes.max_n", &format!("above caps.cube = {}", caps.cube));
            }
            if c.min_n > c.max_n {
                return bad("cubes.min_n", "exceeds cubes.max_n");
            }
        }
        if let Some(s) = &self.shatter {
            if s.max_p > caps.shatter {
                return bad(
                    "shatter.max_p",
                    &format!("above caps.shatter = {}", caps.shatter),
                );
            }
        }
        for (i, g) in self.growth.iter().enumerate() {
            if !matches!(g.family.as_str(), "lines" | "cube" | "polys") {
                return bad(
                    &format!("growth[{i}].family"),
                    &format!("unknown family `{}`", g.family),
                );
            }
        }
        Ok(())
    }
}

fn check_modes(field: &str, modes: &[String]) -> Result<()> {
    for (i, m) in modes.iter().enumerate() {
        m.parse::<DecisionMode>()
            .map_err(|e| Error::Config(format!("{field}[{i}]: {e}")))?;
    }
    Ok(())
}

/// All reports of a run, sorted by check name then instance id.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SuiteReport {
    pub records: Vec<CheckReport>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub skip: usize,
    pub fail: usize,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.records.iter().filter(|r| r.failed())
    }

    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn tally(&self) -> BTreeMap<String, Tally> {
        let mut out: BTreeMap<String, Tally> = BTreeMap::new();
        for r in &self.records {
            let t = out.entry(r.check.clone()).or_default();
            if r.skipped {
                t.skip += 1;
            } else if r.holds {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
        out
    }

    /// One line per check: `name pass=.. skip=.. fail=..`, then failures.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (name, t) in self.tally() {
            out.push_str(&format!(
                "{name} pass={} skip={} fail={}\n",
                t.pass, t.skip, t.fail
            ));
        }
        for f in self.failures() {
            out.push_str(&format!("{f}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Number of distinct checked tables with `cl >= 2`.
    pub fn tables_with_two_classes(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.check == "log_bound" && !r.skipped)
            .map(|r| (&r.instance, &r.digest))
            .collect::<std::collections::HashSet<_>>()
            .len()
    }
}

struct Runner<'a> {
    config: &'a SuiteConfig,
    out: Vec<CheckReport>,
}

impl Runner<'_> {
    fn push(&mut self, r: CheckReport, instance: &str, seed: Option<u64>) {
        self.out.push(r.with_instance(instance, seed));
    }

    /// The per-table checks every instance gets.
    fn standard<'t>(
        &mut self,
        table: &'t DecisionTable,
        instance: &str,
        seed: Option<u64>,
    ) -> TableAnalysis<'t> {
        let analysis = TableAnalysis::new(table);
        self.out
            .push(analysis.row_count_bound().with_instance(instance, seed));
        self.out
            .push(analysis.log_bound().with_instance(instance, seed));
        self.out
            .push(analysis.projection_bound().with_instance(instance, seed));
        analysis
    }

    fn oracles(&mut self, analysis: &TableAnalysis<'_>, instance: &str, seed: Option<u64>) {
        let t = analysis.table;
        let caps = &self.config.caps;
        if t.dim() <= caps.brute_force_r_dim {
            let brute = brute_force_r(t, caps.brute_force_r_dim).expect("within cap");
            let r = CheckReport {
                check: "reduct_oracle".into(),
                instance: String::new(),
                lhs: analysis.reduct.cardinality.to_string(),
                relation: "==".into(),
                rhs: brute.to_string(),
                holds: analysis.reduct.cardinality == brute,
                skipped: false,
                seed: None,
                digest: String::new(),
            }
            .with_table(t);
            self.push(r, instance, seed);
        }
        if t.dim() <= caps.brute_force_i_dim {
            let brute = brute_force_i(t, caps.brute_force_i_dim).expect("within cap");
            let r = CheckReport {
                check: "shatter_oracle".into(),
                instance: String::new(),
                lhs: analysis.shatter.dimension.to_string(),
                relation: "==".into(),
                rhs: brute.to_string(),
                holds: analysis.shatter.dimension == brute,
                skipped: false,
                seed: None,
                digest: String::new(),
            }
            .with_table(t);
            self.push(r, instance, seed);
        }
    }
}

fn simple(check: &str, lhs: String, relation: &str, rhs: String, holds: bool) -> CheckReport {
    CheckReport {
        check: check.into(),
        instance: String::new(),
        lhs,
        relation: relation.into(),
        rhs,
        holds,
        skipped: false,
        seed: None,
        digest: String::new(),
    }
}

/// Runs every check the config asks for. `base_dir` resolves relative table
/// paths.
pub fn run_suite(config: &SuiteConfig, base_dir: &Path) -> Result<SuiteReport> {
    config.validate()?;
    let mut run = Runner {
        config,
        out: Vec::new(),
    };
    let seed = config.seed;

    if let Some(rc) = &config.random_tables {
        for i in 0..rc.count {
            let s = derive_seed(seed, 1, i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let k = rc.alphabet_sizes[i % rc.alphabet_sizes.len()];
            let dim = rng.gen_range(1..=rc.max_dim);
            let capacity = (k as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
            let rows = rng.gen_range(1..=(rc.max_rows as u128).min(capacity) as usize);
            let classes = rng.gen_range(1..=rc.max_classes);
            let alphabet = Alphabet::numeric(k)?;
            let t = random_table(&alphabet, dim, rows, &DecisionMode::Random { classes }, s)?;
            let id = format!("random/{i:04}");
            let analysis = TableAnalysis::new(&t);
            for r in [
                analysis.row_count_bound(),
                analysis.log_bound(),
                analysis.projection_bound(),
            ] {
                run.push(r, &id, Some(s));
            }
            run.oracles(&analysis, &id, Some(s));
        }
    }

    if let Some(lc) = &config.lines {
        let modes: Vec<DecisionMode> = lc
            .decisions
            .iter()
            .map(|m| m.parse())
            .collect::<Result<_>>()?;
        for n in lc.min_lines..=lc.max_lines {
            for inst in 0..lc.instances_per_size {
                let s = derive_seed(seed, 2, (n * 1000 + inst) as u64);
                let lines = random_general_position_lines(n, s);
                for (mi, mode) in modes.iter().enumerate() {
                    let t = build_line_table(&lines, mode, s)?;
                    let id = format!("lines/n{n:02}/{inst:03}/{mode}");
                    if mi == 0 {
                        let gp = in_general_position(&lines);
                        run.push(
                            simple(
                                "cell_count",
                                t.num_rows().to_string(),
                                "==",
                                format!("1+{n}+C({n},2) = {}", general_position_cells(n)),
                                gp && t.num_rows() == general_position_cells(n),
                            )
                            .with_table(&t),
                            &id,
                            Some(s),
                        );
                    }
                    let analysis = run.standard(&t, &id, Some(s));
                    let power = analysis.power_bound(&ClassDescriptor::lines())?;
                    run.push(power, &id, Some(s));
                }
            }
        }
    }

    if let Some(pc) = &config.polys {
        let modes: Vec<DecisionMode> = pc
            .decisions
            .iter()
            .map(|m| m.parse())
            .collect::<Result<_>>()?;
        for sys in 0..pc.systems {
            let s = derive_seed(seed, 3, sys as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let count = rng.gen_range(1..=pc.max_polys);
            let polys = random_poly_system(count, pc.max_degree, s);
            let roots = total_distinct_roots(&polys);
            for (mi, mode) in modes.iter().enumerate() {
                let t = build_poly_table(&polys, mode, s)?;
                let id = format!("polys/{sys:03}/{mode}");
                if mi == 0 {
                    run.push(
                        simple(
                            "cell_count",
                            t.num_rows().to_string(),
                            "<=",
                            format!("2*{roots}+1"),
                            t.num_rows() <= 2 * roots + 1,
                        )
                        .with_table(&t),
                        &id,
                        Some(s),
                    );
                }
                let analysis = run.standard(&t, &id, Some(s));
                if let Some(q) = pc.declared_dimension {
                    let class = ClassDescriptor::new(
                        Family::Polys {
                            max_degree: pc.max_degree,
                        },
                        3,
                        crate::bounds::ClassDimension::Finite(q),
                        "declared",
                    )?;
                    let power = analysis.power_bound(&class)?;
                    run.push(power, &id, Some(s));
                }
                run.oracles(&analysis, &id, Some(s));
            }
        }
    }

    if let Some(cc) = &config.cubes {
        for n in cc.min_n..=cc.max_n {
            let demo = strengthened_log_bound_demo_capped(n, config.caps.cube)?;
            run.out.push(demo);
            let t = DecisionTable::complete_cube(n, &DecisionMode::Distinct, 0)?;
            let id = format!("cube/n{n:02}");
            run.standard(&t, &id, None);
        }
    }

    if let Some(sc) = &config.shatter {
        for p in 1..=sc.max_p {
            let polys = shatter_system_capped(p, config.caps.shatter)?;
            let t = build_poly_table(&polys, &DecisionMode::Distinct, 0)?;
            let id = format!("shatter/p{p}");
            let analysis = run.standard(&t, &id, None);
            let pm = (Sign::Neg.symbol(), Sign::Pos.symbol());
            let witness_ok = Witness::uniform(pm, p).holds_in(&t.patterns());
            let dim = analysis.shatter.dimension;
            let r = simple(
                "independence",
                format!("I={dim}"),
                "==",
                format!("{p} with pairs {{-1,+1}}"),
                dim == p && witness_ok,
            )
            .with_table(&t);
            run.push(r, &id, None);
        }
    }

    for (i, g) in config.growth.iter().enumerate() {
        let class = match g.family.as_str() {
            "lines" => ClassDescriptor::lines(),
            "cube" => ClassDescriptor::cube(),
            "polys" => ClassDescriptor::polys(g.max_degree),
            other => {
                return Err(Error::Config(format!(
                    "growth[{i}].family: unknown `{other}`"
                )))
            }
        };
        let s = derive_seed(seed, 4, i as u64);
        let points = empirical_nc(&class, g.n, g.budget, s, &[])
            .map_err(|e| Error::Config(format!("growth[{i}]: {e}")))?;
        for r in growth_checks(&class, &points) {
            let id = format!("growth/{}/{}", g.family, r.instance);
            run.push(r, &id, Some(s));
        }
    }

    for (i, entry) in config.tables.iter().enumerate() {
        let path: PathBuf = base_dir.join(&entry.path);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Config(format!("tables[{i}].path: {}: {e}", path.display())))?;
        let t = DecisionTable::parse_dtab(&text)
            .map_err(|e| Error::Config(format!("tables[{i}].path: {}: {e}", path.display())))?;
        let id = format!("table/{}", entry.path);
        let analysis = run.standard(&t, &id, None);
        if let Some(class) = &entry.class {
            class
                .validate()
                .map_err(|e| Error::Config(format!("tables[{i}].class: {e}")))?;
            let power = analysis
                .power_bound(class)
                .map_err(|e| Error::Config(format!("tables[{i}].class: {e}")))?;
            run.push(power, &id, None);
        }
        if let Some(expect) = &entry.expect {
            let actual = [
                ("rows", expect.rows, t.num_rows()),
                ("classes", expect.classes, t.num_classes()),
                ("dim", expect.dim, t.dim()),
                ("reduct", expect.reduct, analysis.reduct.cardinality),
                ("shatter", expect.shatter, analysis.shatter.dimension),
            ];
            for (what, want, got) in actual {
                if let Some(want) = want {
                    let r = simple(
                        "expected_value",
                        format!("{what}={got}"),
                        "==",
                        want.to_string(),
                        want == got,
                    )
                    .with_table(&t);
                    run.push(r, &format!("{id}/{what}"), None);
                }
            }
        }
    }

    let mut records = run.out;
    records.sort_by(|a, b| {
        a.check
            .cmp(&b.check)
            .then_with(|| a.instance.cmp(&b.instance))
    });
    Ok(SuiteReport { records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_empty_report() {
        let cfg = SuiteConfig::from_json("{}").unwrap();
        assert_eq!(cfg, SuiteConfig::default());
        let report = run_suite(&cfg, Path::new(".")).unwrap();
        assert!(report.records.is_empty());
        assert!(report.all_hold());
    }

    #[test]
    fn config_errors_name_the_field() {
        let e = SuiteConfig::from_json(r#"{"lines": {"min_lines": 2, "max_lines": "x"}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("lines.max_lines"), "{e}");
        let e = SuiteConfig::from_json(r#"{"bogus": 1}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("bogus"), "{e}");
        let e = SuiteConfig::from_json(r#"{"cubes": {"min_n": 1, "max_n": 40}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("cubes.max_n"), "{e}");
        let e = SuiteConfig::from_json(
            r#"{"lines": {"min_lines": 2, "max_lines": 3, "instances_per_size": 1, "decisions": ["nope"]}}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(e.contains("lines.decisions[0]"), "{e}");
    }

    #[test]
    fn standard_config_round_trips() {
        let cfg = SuiteConfig::standard();
        assert_eq!(SuiteConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn small_lines_run_holds_and_is_deterministic() {
        let cfg = SuiteConfig {
            seed: 5,
            lines: Some(LinesConfig {
                min_lines: 2,
                max_lines: 4,
                instances_per_size: 2,
                decisions: vec!["distinct".into()],
            }),
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg, Path::new(".")).unwrap();
        let b = run_suite(&cfg, Path::new(".")).unwrap();
        assert_eq!(a, b);
        assert!(a.all_hold(), "{}", a.summary());
        let tally = a.tally();
        assert_eq!(tally["power_bound"].pass, 6);
        let mut sorted = a.records.clone();
        sorted.sort_by(|x, y| x.check.cmp(&y.check).then(x.instance.cmp(&y.instance)));
        assert_eq!(sorted, a.records);
    }
}
