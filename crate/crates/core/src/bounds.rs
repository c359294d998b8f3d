//! Exact checks of the row-count and reduct-size inequalities on concrete
//! tables.
//!
//! Inequalities with roots or logarithms on one side are compared after
//! clearing them into integer powers, e.g. `R >= cl^(1/I) / k^2` becomes
//! `(R * k^2)^I >= cl`. No check ever goes through floating point.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lines::{enumerate_cells, general_position_cells, random_general_position_lines};
use crate::poly::{enumerate_sign_vectors, random_poly_system};
use crate::reducts::{min_reduct, ReductResult};
use crate::shattering::{shattering_dimension, ShatterResult};
use crate::table::{AttributeSet, DecisionMode, DecisionTable, MergePolicy};

pub const LINES_GROWTH_CAP: usize = 16;
pub const CUBE_GROWTH_CAP: usize = 16;
pub const POLYS_GROWTH_CAP: usize = 8;
pub const DEFAULT_DEMO_CAP: usize = 12;

/// Value of `I(C)` declared for a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassDimension {
    Finite(u32),
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Family {
    /// Tables of line arrangements in the plane.
    Lines,
    /// Tables of univariate polynomial sign patterns with degree at most
    /// `max_degree`.
    Polys {
        max_degree: usize,
    },
    /// Complete boolean tables and everything in their closure.
    Cube,
    Custom {
        name: String,
    },
}

/// A closed class, described by the parameters the bounds need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDescriptor {
    pub family: Family,
    pub k: usize,
    pub dimension: ClassDimension,
    #[serde(default)]
    pub note: String,
}

impl ClassDescriptor {
    pub fn new(family: Family, k: usize, dimension: ClassDimension, note: &str) -> Result<Self> {
        let c = ClassDescriptor {
            family,
            k,
            dimension,
            note: note.to_string(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Class(format!(
                "k must be at least 2, got {}",
                self.k
            )));
        }
        if self.dimension == ClassDimension::Finite(0) {
            return Err(Error::Class(
                "a finite class dimension must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Half-plane attributes: `k = 2`, `I = 2`.
    pub fn lines() -> Self {
        ClassDescriptor {
            family: Family::Lines,
            k: 2,
            dimension: ClassDimension::Finite(2),
            note: "no three lines realize all eight value vectors".into(),
        }
    }

    pub fn cube() -> Self {
        ClassDescriptor {
            family: Family::Cube,
            k: 2,
            dimension: ClassDimension::Unbounded,
            note: "complete boolean tables of every dimension".into(),
        }
    }

    /// Univariate sign patterns with bounded degree; the class dimension is
    /// finite but not computed, so it is left unbounded unless declared.
    pub fn polys(max_degree: usize) -> Self {
        ClassDescriptor {
            family: Family::Polys { max_degree },
            k: 3,
            dimension: ClassDimension::Unbounded,
            note: "univariate sign patterns".into(),
        }
    }
}

/// Outcome of one inequality on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub holds: bool,
    pub skipped: bool,
    pub seed: Option<u64>,
    pub digest: String,
}

impl CheckReport {
    fn new(check: &str, lhs: String, relation: &str, rhs: String, holds: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            instance: String::new(),
            lhs,
            relation: relation.to_string(),
            rhs,
            holds,
            skipped: false,
            seed: None,
            digest: String::new(),
        }
    }

    fn skipped(check: &str, why: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            instance: String::new(),
            lhs: String::new(),
            relation: "skipped".to_string(),
            rhs: why.to_string(),
            holds: false,
            skipped: true,
            seed: None,
            digest: String::new(),
        }
    }

    pub fn failed(&self) -> bool {
        !self.skipped && !self.holds
    }

    pub fn with_instance(mut self, instance: impl Into<String>, seed: Option<u64>) -> Self {
        self.instance = instance.into();
        self.seed = seed;
        self
    }

    pub fn with_table(mut self, table: &DecisionTable) -> Self {
        self.digest = digest(table);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.skipped {
            "skip"
        } else if self.holds {
            "pass"
        } else {
            "FAIL"
        };
        if self.skipped {
            write!(
                f,
                "{status} {} {} ({})",
                self.check, self.instance, self.rhs
            )
        } else {
            write!(
                f,
                "{status} {} {}: {} {} {}",
                self.check, self.instance, self.lhs, self.relation, self.rhs
            )
        }
    }
}

/// FNV-1a of the table's `.dtab` text, as 16 hex digits.
pub fn digest(table: &DecisionTable) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in table.to_dtab().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

/// Everything the per-table checks need, computed once.
#[derive(Debug, Clone)]
pub struct TableAnalysis<'a> {
    pub table: &'a DecisionTable,
    pub reduct: ReductResult,
    pub shatter: ShatterResult,
}

impl<'a> TableAnalysis<'a> {
    pub fn new(table: &'a DecisionTable) -> Self {
        TableAnalysis {
            table,
            reduct: min_reduct(table),
            shatter: shattering_dimension(table),
        }
    }

    /// `N(T) <= (k^2 * dim T)^I(T)`, for `cl(T) >= 2` and `dim T >= 1`.
    pub fn row_count_bound(&self) -> CheckReport {
        let t = self.table;
        let name = "row_count_bound";
        if t.num_classes() < 2 {
            return CheckReport::skipped(name, "cl < 2").with_table(t);
        }
        if t.dim() == 0 {
            return CheckReport::skipped(name, "dim = 0").with_table(t);
        }
        let i = self.shatter.dimension;
        let base = big(t.k() * t.k() * t.dim());
        let rhs = Pow::pow(&base, i as u32);
        CheckReport::new(
            name,
            t.num_rows().to_string(),
            "<=",
            format!("({}^2*{})^{} = {}", t.k(), t.dim(), i, rhs),
            big(t.num_rows()) <= rhs,
        )
        .with_table(t)
    }

    /// `R(T) >= log_k cl(T)`, compared as `k^R >= cl`.
    pub fn log_bound(&self) -> CheckReport {
        let t = self.table;
        let name = "log_bound";
        let cl = t.num_classes();
        if cl < 2 {
            return CheckReport::skipped(name, "cl < 2").with_table(t);
        }
        let r = self.reduct.cardinality;
        CheckReport::new(
            name,
            r.to_string(),
            ">=",
            format!("log_{}({})", t.k(), cl),
            Pow::pow(&big(t.k()), r as u32) >= big(cl),
        )
        .with_table(t)
    }

    /// `R(T) >= cl(T)^(1/I(C)) / k^2`, compared as `(R * k^2)^I >= cl`.
    pub fn power_bound(&self, class: &ClassDescriptor) -> Result<CheckReport> {
        let t = self.table;
        let name = "power_bound";
        let ClassDimension::Finite(i) = class.dimension else {
            return Err(Error::Class(
                "the power bound needs a finite class dimension".into(),
            ));
        };
        class.validate()?;
        let cl = t.num_classes();
        if cl < 2 {
            return Ok(CheckReport::skipped(name, "cl < 2").with_table(t));
        }
        let r = self.reduct.cardinality;
        let k = class.k;
        Ok(CheckReport::new(
            name,
            r.to_string(),
            ">=",
            format!("{cl}^(1/{i})/{}", k * k),
            Pow::pow(&big(r * k * k), i) >= big(cl),
        )
        .with_table(t))
    }

    /// Projecting onto a minimum reduct keeps at least `cl(T)` rows.
    pub fn projection_bound(&self) -> CheckReport {
        let t = self.table;
        let name = "projection_bound";
        let cl = t.num_classes();
        if cl < 2 {
            return CheckReport::skipped(name, "cl < 2").with_table(t);
        }
        let projected = t
            .project(&self.reduct.reduct, MergePolicy::Earliest)
            .expect("reduct columns are in range");
        CheckReport::new(
            name,
            projected.num_rows().to_string(),
            ">=",
            cl.to_string(),
            projected.num_rows() >= cl,
        )
        .with_table(t)
    }
}

pub fn check_row_count_bound(table: &DecisionTable) -> CheckReport {
    TableAnalysis::new(table).row_count_bound()
}

pub fn check_log_bound(table: &DecisionTable) -> CheckReport {
    TableAnalysis::new(table).log_bound()
}

pub fn check_power_bound(table: &DecisionTable, class: &ClassDescriptor) -> Result<CheckReport> {
    TableAnalysis::new(table).power_bound(class)
}

pub fn check_projection_bound(table: &DecisionTable) -> CheckReport {
    TableAnalysis::new(table).projection_bound()
}

/// The complete boolean table of dimension `n` with distinct decisions has
/// `R = n` and `cl = 2^n`, so `R >= log_2 cl + 1` fails. The report holds
/// when that strengthened bound indeed fails (`2^R < 2 * cl`) and `R = n`.
pub fn strengthened_log_bound_demo(n: usize) -> Result<CheckReport> {
    strengthened_log_bound_demo_capped(n, DEFAULT_DEMO_CAP)
}

pub fn strengthened_log_bound_demo_capped(n: usize, cap: usize) -> Result<CheckReport> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "cube dimension",
            got: n,
            cap,
        });
    }
    let t = DecisionTable::complete_cube(n, &DecisionMode::Distinct, 0)?;
    let r = min_reduct(&t).cardinality;
    let cl = t.num_classes();
    let violated = Pow::pow(&big(2), r as u32) < big(2 * cl);
    Ok(CheckReport::new(
        "log2_plus_one_violated",
        format!("R={r}"),
        "<",
        format!("log_2({cl})+1"),
        violated && r == n,
    )
    .with_table(&t)
    .with_instance(format!("cube/n{n:02}"), None))
}

/// Smallest `q >= 1` with `(R * k^2)^q >= cl` for every `(R, cl)` given;
/// the exponent the data is consistent with in the power bound.
pub fn smallest_consistent_exponent(samples: &[(usize, usize)], k: usize) -> Option<u32> {
    let mut q = 1u32;
    loop {
        let ok = samples
            .iter()
            .filter(|(_, cl)| *cl >= 2)
            .all(|&(r, cl)| Pow::pow(&big(r * k * k), q) >= big(cl));
        if ok {
            return Some(q);
        }
        if samples.iter().any(|&(r, cl)| cl >= 2 && r * k * k <= 1) || q >= 64 {
            return None;
        }
        q += 1;
    }
}

/// One point of the empirical growth function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NcPoint {
    pub dim: usize,
    pub max_rows: usize,
    /// Exact `N_C(dim)` when the family's maximum is known in closed form.
    pub exact: Option<usize>,
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    // splitmix64 finalizer over a simple combination.
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(b.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    mix(seed, a, b)
}

/// Largest row count among projections of `table` onto `size` columns.
fn best_projection(table: &DecisionTable, size: usize) -> usize {
    let dim = table.dim();
    let size = size.min(dim);
    let mut best = 0;
    let mut cols: Vec<usize> = (0..size).collect();
    loop {
        let p = table
            .project(
                &AttributeSet::new(cols.iter().copied()),
                MergePolicy::Earliest,
            )
            .expect("in range");
        best = best.max(p.num_rows());
        // Next combination in lexicographic order.
        let Some(i) = (0..size).rev().find(|&i| cols[i] < dim - size + i) else {
            return best;
        };
        cols[i] += 1;
        for j in i + 1..size {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Empirical `N_C(n')` for `n' = 1..=n`: the largest row count among
/// `budget` generated instances per dimension (plus projections of `extra`
/// tables). This is a lower estimate of the true value; it is made
/// nondecreasing by carrying the running maximum.
pub fn empirical_nc(
    class: &ClassDescriptor,
    n: usize,
    budget: usize,
    seed: u64,
    extra: &[DecisionTable],
) -> Result<Vec<NcPoint>> {
    let cap = match class.family {
        Family::Lines => LINES_GROWTH_CAP,
        Family::Cube => CUBE_GROWTH_CAP,
        Family::Polys { .. } => POLYS_GROWTH_CAP,
        Family::Custom { .. } if !extra.is_empty() => usize::MAX,
        Family::Custom { ref name } => {
            return Err(Error::Class(format!(
                "custom family `{name}` has no generator; supply tables"
            )))
        }
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "growth dimension",
            got: n,
            cap,
        });
    }
    let mut out = Vec::with_capacity(n);
    let mut running = 0;
    for d in 1..=n {
        let mut best = extra
            .iter()
            .map(|t| best_projection(t, d))
            .max()
            .unwrap_or(0);
        let mut exact = None;
        match &class.family {
            Family::Lines => {
                for b in 0..budget {
                    let lines = random_general_position_lines(d, mix(seed, d as u64, b as u64));
                    best = best.max(enumerate_cells(&lines)?.len());
                }
                exact = Some(general_position_cells(d));
            }
            Family::Cube => {
                let t = DecisionTable::complete_cube(d, &DecisionMode::Constant(0), 0)?;
                best = best.max(t.num_rows());
                exact = Some(1usize << d);
            }
            Family::Polys { max_degree } => {
                for b in 0..budget {
                    let polys = random_poly_system(d, *max_degree, mix(seed, d as u64, b as u64));
                    best = best.max(enumerate_sign_vectors(&polys)?.len());
                }
            }
            Family::Custom { .. } => {}
        }
        running = running.max(best);
        out.push(NcPoint {
            dim: d,
            max_rows: running,
            exact,
        });
    }
    Ok(out)
}

/// Checks on a growth curve: nondecreasing, and the finite-`n` upper and
/// lower bounds that follow from the class dimension.
pub fn growth_checks(class: &ClassDescriptor, points: &[NcPoint]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let monotone = points.windows(2).all(|w| w[0].max_rows <= w[1].max_rows);
    out.push(CheckReport::new(
        "growth_monotone",
        points
            .iter()
            .map(|p| p.max_rows.to_string())
            .collect::<Vec<_>>()
            .join(","),
        "nondecreasing",
        String::new(),
        monotone,
    ));
    for p in points {
        let n = p.dim;
        let rows = big(p.max_rows);
        match class.dimension {
            ClassDimension::Finite(i) => {
                let rhs = Pow::pow(&big(class.k * class.k * n), i);
                out.push(
                    CheckReport::new(
                        "growth_upper",
                        p.max_rows.to_string(),
                        "<=",
                        format!("({}^2*{n})^{i} = {rhs}", class.k),
                        rows <= rhs,
                    )
                    .with_instance(format!("n{n:02}"), None),
                );
            }
            ClassDimension::Unbounded => {
                let upper = Pow::pow(&big(class.k), n as u32);
                out.push(
                    CheckReport::new(
                        "growth_upper",
                        p.max_rows.to_string(),
                        "<=",
                        format!("{}^{n} = {upper}", class.k),
                        rows <= upper,
                    )
                    .with_instance(format!("n{n:02}"), None),
                );
                if class.family == Family::Cube {
                    let lower = Pow::pow(&big(2), n as u32);
                    out.push(
                        CheckReport::new(
                            "growth_lower",
                            p.max_rows.to_string(),
                            ">=",
                            format!("2^{n} = {lower}"),
                            rows >= lower,
                        )
                        .with_instance(format!("n{n:02}"), None),
                    );
                }
            }
        }
        if let Some(exact) = p.exact {
            out.push(
                CheckReport::new(
                    "growth_exact",
                    p.max_rows.to_string(),
                    "==",
                    exact.to_string(),
                    p.max_rows == exact,
                )
                .with_instance(format!("n{n:02}"), None),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{build_line_table, LineAttr};
    use crate::poly::{build_poly_table, RatPoly};

    fn square(mode: DecisionMode) -> DecisionTable {
        DecisionTable::complete_cube(2, &mode, 0).unwrap()
    }

    #[test]
    fn row_count_examples() {
        let r = check_row_count_bound(&square(DecisionMode::Distinct));
        assert!(r.holds && !r.skipped);
        assert_eq!(r.lhs, "4");
        assert!(r.rhs.ends_with("= 64"));
        let lines = random_general_position_lines(3, 5);
        let t = build_line_table(&lines, &DecisionMode::Distinct, 0).unwrap();
        let r = check_row_count_bound(&t);
        assert_eq!(r.lhs, "7");
        assert!(r.rhs.ends_with("= 144"), "{}", r.rhs);
        assert!(r.holds);
        assert!(check_row_count_bound(&square(DecisionMode::Constant(0))).skipped);
    }

    #[test]
    fn log_bound_examples() {
        for n in 1..=6 {
            let t = DecisionTable::complete_cube(n, &DecisionMode::Distinct, 0).unwrap();
            let r = check_log_bound(&t);
            assert!(r.holds);
            assert_eq!(r.lhs, n.to_string());
        }
        let t = build_poly_table(
            &[
                RatPoly::from_ints("x", &[0, 1]),
                RatPoly::from_ints("y", &[-1, 1]),
            ],
            &DecisionMode::Distinct,
            0,
        )
        .unwrap();
        let r = check_log_bound(&t);
        assert_eq!(
            (r.lhs.as_str(), r.rhs.as_str(), r.holds),
            ("2", "log_3(5)", true)
        );
        let two = square(DecisionMode::Explicit(vec![0, 0, 1, 1]));
        let r = check_log_bound(&two);
        assert_eq!((r.lhs.as_str(), r.holds), ("1", true));
    }

    #[test]
    fn power_bound_examples() {
        let cross = [
            LineAttr::from_ints("x", 1, 0, 0).unwrap(),
            LineAttr::from_ints("y", 0, 1, 0).unwrap(),
        ];
        let t = build_line_table(&cross, &DecisionMode::Distinct, 0).unwrap();
        let r = check_power_bound(&t, &ClassDescriptor::lines()).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, "2");
        let six = random_general_position_lines(6, 99);
        let t = build_line_table(&six, &DecisionMode::Distinct, 0).unwrap();
        assert_eq!(t.num_classes(), 22);
        let r = check_power_bound(&t, &ClassDescriptor::lines()).unwrap();
        assert!(r.holds);
        assert!(r.lhs.parse::<usize>().unwrap() >= 2);
        assert!(check_power_bound(&t, &ClassDescriptor::cube()).is_err());
    }

    #[test]
    fn projection_examples() {
        let r = check_projection_bound(&square(DecisionMode::Distinct));
        assert_eq!((r.lhs.as_str(), r.rhs.as_str(), r.holds), ("4", "4", true));
        assert!(check_projection_bound(&square(DecisionMode::Constant(3))).skipped);
    }

    #[test]
    fn demo_examples() {
        for n in [2, 3, 10] {
            let r = strengthened_log_bound_demo(n).unwrap();
            assert!(r.holds, "{r}");
            assert_eq!(r.lhs, format!("R={n}"));
        }
        assert!(strengthened_log_bound_demo(13).is_err());
    }

    #[test]
    fn growth_examples() {
        let lines = empirical_nc(&ClassDescriptor::lines(), 3, 3, 1, &[]).unwrap();
        let rows: Vec<usize> = lines.iter().map(|p| p.max_rows).collect();
        assert_eq!(rows, vec![2, 4, 7]);
        let cube = empirical_nc(&ClassDescriptor::cube(), 4, 1, 1, &[]).unwrap();
        assert_eq!(
            cube.iter().map(|p| p.max_rows).collect::<Vec<_>>(),
            vec![2, 4, 8, 16]
        );
        for c in growth_checks(&ClassDescriptor::cube(), &cube) {
            assert!(c.holds, "{c}");
        }
        let custom = ClassDescriptor::new(
            Family::Custom {
                name: "none".into(),
            },
            2,
            ClassDimension::Finite(1),
            "",
        )
        .unwrap();
        assert!(empirical_nc(&custom, 2, 1, 0, &[]).is_err());
        assert!(empirical_nc(&ClassDescriptor::lines(), 17, 1, 0, &[]).is_err());
    }

    #[test]
    fn exponent_search() {
        assert_eq!(smallest_consistent_exponent(&[(1, 4)], 2), Some(1));
        assert_eq!(smallest_consistent_exponent(&[(1, 17)], 2), Some(3));
        assert_eq!(smallest_consistent_exponent(&[], 3), Some(1));
    }

    #[test]
    fn class_validation() {
        assert!(ClassDescriptor::new(Family::Cube, 1, ClassDimension::Unbounded, "").is_err());
        assert!(ClassDescriptor::new(Family::Cube, 2, ClassDimension::Finite(0), "").is_err());
    }
}
