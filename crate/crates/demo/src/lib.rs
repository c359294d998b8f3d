//! Browser bindings. Every entry point takes text and returns a JSON string
//! with either the result or an `error` field, so the page needs no glue
//! beyond `JSON.parse`.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use dtab_core::lines::{build_line_table, parse_lines};
use dtab_core::poly::{build_poly_table, isolate_roots_within, parse_polys};
use dtab_core::rational::ratio;
use dtab_core::reducts::min_reduct;
use dtab_core::shattering::shattering_dimension;
use dtab_core::{AttributeSet, DecisionMode, DecisionTable};

fn names(t: &DecisionTable, s: &AttributeSet) -> Vec<String> {
    s.indices()
        .iter()
        .map(|&i| t.attributes()[i].clone())
        .collect()
}

fn summary(t: &DecisionTable) -> Value {
    let r = min_reduct(t);
    let s = shattering_dimension(t);
    json!({
        "rows": t.num_rows(),
        "classes": t.num_classes(),
        "dim": t.dim(),
        "reduct_cardinality": r.cardinality,
        "reduct": names(t, &r.reduct),
        "shattering_dimension": s.dimension,
        "witness_columns": names(t, &s.columns),
        "witness": s.witness.display(t.alphabet()),
        "dtab": t.to_dtab(),
    })
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Analyzes a table in `.dtab` text.
#[wasm_bindgen]
pub fn analyze_table(text: &str) -> String {
    respond(
        DecisionTable::parse_dtab(text)
            .map(|t| summary(&t))
            .map_err(|e| e.to_string()),
    )
}

/// Builds the table of a line arrangement (`name a b c` per line). The
/// response carries float coefficients for drawing and the decision of each
/// realized pattern.
#[wasm_bindgen]
pub fn line_arrangement(text: &str, decisions: &str, seed: u32) -> String {
    respond((|| {
        let lines = parse_lines(text).map_err(|e| e.to_string())?;
        let mode: DecisionMode = decisions
            .parse()
            .map_err(|e: dtab_core::Error| e.to_string())?;
        let t = build_line_table(&lines, &mode, u64::from(seed)).map_err(|e| e.to_string())?;
        let f = |v: &num_rational::BigRational| v.to_f64().unwrap_or(f64::NAN);
        let mut out = summary(&t);
        out["lines"] = lines
            .iter()
            .map(|l| json!({ "name": l.name, "a": f(&l.a), "b": f(&l.b), "c": f(&l.c) }))
            .collect();
        out["cells"] = t
            .rows()
            .iter()
            .map(|r| {
                let key: String = r.values.iter().map(|v| v.to_string()).collect();
                json!({ "pattern": key, "decision": r.decision })
            })
            .collect();
        Ok(out)
    })())
}

/// Sign vectors of univariate polynomials (`name c0 c1 ...` per line) and
/// approximate root locations.
#[wasm_bindgen]
pub fn poly_arrangement(text: &str) -> String {
    respond((|| {
        let polys = parse_polys(text).map_err(|e| e.to_string())?;
        let t = build_poly_table(&polys, &DecisionMode::Distinct, 0).map_err(|e| e.to_string())?;
        let mut out = summary(&t);
        let mut roots = Vec::new();
        for p in &polys {
            let iv = isolate_roots_within(p, &ratio(1, 1 << 20)).map_err(|e| e.to_string())?;
            roots.push(json!({
                "name": p.name,
                "poly": p.poly.to_string(),
                "roots": iv.iter().map(|r| r.midpoint_f64()).collect::<Vec<_>>(),
            }));
        }
        out["polys"] = Value::Array(roots);
        out["vectors"] = t
            .rows()
            .iter()
            .map(|r| {
                r.values
                    .iter()
                    .map(|&v| t.alphabet().symbol(v).to_string())
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(out)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn analyze() {
        let v = parse(analyze_table(
            "alphabet: 0 1\nattributes: a b\n0 0 -> 0\n0 1 -> 1\n1 0 -> 2\n1 1 -> 3\n",
        ));
        assert_eq!(v["reduct_cardinality"], 2);
        assert_eq!(v["shattering_dimension"], 2);
        let v = parse(analyze_table("alphabet: 0\n"));
        assert!(v["error"].is_string());
    }

    #[test]
    fn lines() {
        let v = parse(line_arrangement("x 1 0 0\ny 0 1 0\n", "distinct", 0));
        assert_eq!(v["rows"], 4);
        assert_eq!(v["cells"].as_array().unwrap().len(), 4);
        assert_eq!(v["lines"][0]["a"], 1.0);
        let v = parse(line_arrangement(
            "a 1 0 0\nb 0 1 0\nc 1 1 -1\n",
            "random:2",
            5,
        ));
        assert_eq!(v["rows"], 7);
        assert!(v["classes"].as_u64().unwrap() <= 2);
        assert!(parse(line_arrangement("z 0 0 1\n", "distinct", 0))["error"].is_string());
        assert!(parse(line_arrangement("x 1 0 0\n", "bogus", 0))["error"].is_string());
    }

    #[test]
    fn polys() {
        let v = parse(poly_arrangement("x 0 1\ny -1 1\n"));
        assert_eq!(v["rows"], 5);
        assert!((v["polys"][1]["roots"][0].as_f64().unwrap() - 1.0).abs() < 1e-6);
        assert_eq!(v["vectors"][0], json!(["-1", "-1"]));
        assert!(parse(poly_arrangement("z 0\n"))["error"].is_string());
    }
}
