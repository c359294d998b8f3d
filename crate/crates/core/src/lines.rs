//! Decision tables from arrangements of lines in the plane.
//!
//! A line `a·x + b·y + c = 0` gives the attribute that is `0` where
//! `a·x + b·y + c < 0` and `1` where it is `>= 0`, so the line itself
//! belongs to the `1` side. Which geometric side is which follows the
//! coefficient signs.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::table::{Alphabet, DecisionMode, DecisionTable, Symbol};

/// Default bound on the number of lines for [`enumerate_cells`].
pub const DEFAULT_LINE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineAttr {
    pub name: String,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl LineAttr {
    pub fn new(
        name: impl Into<String>,
        a: BigRational,
        b: BigRational,
        c: BigRational,
    ) -> Result<Self> {
        let name = name.into();
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine(name));
        }
        Ok(LineAttr { name, a, b, c })
    }

    pub fn from_ints(name: impl Into<String>, a: i64, b: i64, c: i64) -> Result<Self> {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        LineAttr::new(name, r(a), r(b), r(c))
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        &self.a * x + &self.b * y + &self.c
    }

    /// Attribute value at `(x, y)`: 1 on the nonnegative side, else 0.
    pub fn value_at(&self, x: &BigRational, y: &BigRational) -> Symbol {
        if self.eval(x, y).is_negative() {
            0
        } else {
            1
        }
    }

    /// Same normal direction up to scale.
    pub fn is_parallel(&self, other: &LineAttr) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// Intersection point, if the lines are not parallel.
    pub fn intersection(&self, other: &LineAttr) -> Option<(BigRational, BigRational)> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.b * &other.c - &other.b * &self.c) / &det;
        let y = (&other.a * &self.c - &self.a * &other.c) / &det;
        Some((x, y))
    }
}

impl fmt::Display for LineAttr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.name, self.a, self.b, self.c)
    }
}

/// Required relation per line: `value 0` means strictly negative, `value 1`
/// means nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSystem {
    pub relations: Vec<Symbol>,
}

/// `coef[0]·x + coef[1]·y + constant` compared with zero, strictly (`> 0`)
/// or not (`>= 0`).
#[derive(Debug, Clone)]
struct Constraint {
    coef: [BigRational; 2],
    constant: BigRational,
    strict: bool,
}

impl Constraint {
    fn from_line(line: &LineAttr, value: Symbol) -> Self {
        if value == 0 {
            // a·x + b·y + c < 0  <=>  -(a·x + b·y + c) > 0
            Constraint {
                coef: [-line.a.clone(), -line.b.clone()],
                constant: -line.c.clone(),
                strict: true,
            }
        } else {
            Constraint {
                coef: [line.a.clone(), line.b.clone()],
                constant: line.c.clone(),
                strict: false,
            }
        }
    }
}

/// Eliminates `y` by pairing lower and upper bounds (Fourier–Motzkin), then
/// decides the resulting one-variable system by comparing the tightest
/// bounds on `x`. Exact over the rationals, with strictness carried along.
fn feasible(constraints: Vec<Constraint>) -> bool {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut in_x = Vec::new();
    for c in constraints {
        if c.coef[1].is_positive() {
            lower.push(c);
        } else if c.coef[1].is_negative() {
            upper.push(c);
        } else {
            in_x.push(c);
        }
    }
    for p in &lower {
        for q in &upper {
            // q.coef[1] < 0 < p.coef[1]; the y terms cancel in
            // (-q_y)·p + p_y·q.
            let wp = -q.coef[1].clone();
            let wq = p.coef[1].clone();
            in_x.push(Constraint {
                coef: [&wp * &p.coef[0] + &wq * &q.coef[0], BigRational::zero()],
                constant: &wp * &p.constant + &wq * &q.constant,
                strict: p.strict || q.strict,
            });
        }
    }

    // Each remaining constraint is u·x + v (>|>=) 0.
    let mut lo: Option<(BigRational, bool)> = None;
    let mut hi: Option<(BigRational, bool)> = None;
    for c in in_x {
        let u = &c.coef[0];
        let v = &c.constant;
        if u.is_zero() {
            if v.is_negative() || (c.strict && v.is_zero()) {
                return false;
            }
            continue;
        }
        let bound = -v / u;
        if u.is_positive() {
            // x (>|>=) bound
            let tighter = match &lo {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && c.strict && !s),
            };
            if tighter {
                lo = Some((bound, c.strict));
            }
        } else {
            // x (<|<=) bound
            let tighter = match &hi {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && c.strict && !s),
            };
            if tighter {
                hi = Some((bound, c.strict));
            }
        }
    }
    match (lo, hi) {
        (Some((l, ls)), Some((h, hs))) => l < h || (l == h && !ls && !hs),
        _ => true,
    }
}

/// Whether some point of the plane has exactly the value vector `pattern`.
pub fn feasible_sign_system(lines: &[LineAttr], pattern: &[Symbol]) -> Result<bool> {
    if pattern.len() != lines.len() {
        return Err(Error::PatternLength {
            got: pattern.len(),
            expected: lines.len(),
        });
    }
    Ok(feasible(
        lines
            .iter()
            .zip(pattern)
            .map(|(l, &v)| Constraint::from_line(l, v))
            .collect(),
    ))
}

impl SignSystem {
    pub fn is_feasible(&self, lines: &[LineAttr]) -> Result<bool> {
        feasible_sign_system(lines, &self.relations)
    }
}

/// All realized value vectors, in lexicographic order.
pub fn enumerate_cells(lines: &[LineAttr]) -> Result<Vec<Vec<Symbol>>> {
    enumerate_cells_capped(lines, DEFAULT_LINE_CAP)
}

pub fn enumerate_cells_capped(lines: &[LineAttr], cap: usize) -> Result<Vec<Vec<Symbol>>> {
    let n = lines.len();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "number of lines",
            got: n,
            cap,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let pattern: Vec<Symbol> = (0..n)
            .map(|i| (mask >> (n - 1 - i) & 1) as Symbol)
            .collect();
        if feasible_sign_system(lines, &pattern)? {
            out.push(pattern);
        }
    }
    Ok(out)
}

/// One row per realized value vector over `{0, 1}`, columns named after the
/// lines.
pub fn build_line_table(
    lines: &[LineAttr],
    mode: &DecisionMode,
    seed: u64,
) -> Result<DecisionTable> {
    let cells = enumerate_cells(lines)?;
    DecisionTable::from_patterns(
        Alphabet::binary(),
        lines.iter().map(|l| l.name.clone()).collect(),
        cells,
        mode,
        seed,
    )
}

/// Parses the `.lines` format: `name a b c` per line, `#` comments.
pub fn parse_lines(text: &str) -> Result<Vec<LineAttr>> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 4 {
            return Err(Error::parse(
                line_no,
                1,
                format!("expected `name a b c`, found {} fields", tokens.len()),
            ));
        }
        let coef = |i: usize| {
            parse_rational(tokens[i]).map_err(|m| {
                let col = tokens[i].as_ptr() as usize - raw.as_ptr() as usize + 1;
                Error::parse(line_no, col, m)
            })
        };
        let (a, b, c) = (coef(1)?, coef(2)?, coef(3)?);
        if !names.insert(tokens[0]) {
            return Err(Error::parse(
                line_no,
                1,
                format!("duplicate line name `{}`", tokens[0]),
            ));
        }
        let line = LineAttr::new(tokens[0], a, b, c)
            .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
        out.push(line);
    }
    Ok(out)
}

pub fn format_lines(lines: &[LineAttr]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

/// No two lines parallel and no three through one point.
pub fn in_general_position(lines: &[LineAttr]) -> bool {
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some((x, y)) = lines[i].intersection(&lines[j]) else {
                return false;
            };
            if lines[j + 1..].iter().any(|l| l.eval(&x, &y).is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Seeded random line with small integer coefficients.
pub fn random_line(rng: &mut impl Rng, name: String, range: i64) -> LineAttr {
    loop {
        let a = rng.gen_range(-range..=range);
        let b = rng.gen_range(-range..=range);
        let c = rng.gen_range(-range..=range);
        if let Ok(l) = LineAttr::from_ints(name.clone(), a, b, c) {
            return l;
        }
    }
}

/// `n` lines in general position, drawn by rejection from a seed.
pub fn random_general_position_lines(n: usize, seed: u64) -> Vec<LineAttr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<LineAttr> = Vec::with_capacity(n);
    while lines.len() < n {
        let cand = random_line(&mut rng, format!("l{}", lines.len() + 1), 20);
        lines.push(cand);
        if !in_general_position(&lines) {
            lines.pop();
        }
    }
    lines
}

/// Region count of `n` lines in general position: `1 + n + n(n-1)/2`.
pub fn general_position_cells(n: usize) -> usize {
    1 + n + n * n.saturating_sub(1) / 2
}

/// Rational point `far` units out in direction `(dx, dy)`.
pub fn far_point(dx: i64, dy: i64, far: i64) -> (BigRational, BigRational) {
    let s = BigRational::from_integer(BigInt::from(far));
    (
        BigRational::from_integer(BigInt::from(dx)) * &s,
        BigRational::from_integer(BigInt::from(dy)) * &s,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn l(name: &str, a: i64, b: i64, c: i64) -> LineAttr {
        LineAttr::from_ints(name, a, b, c).unwrap()
    }

    #[test]
    fn single_line_both_sides() {
        let lines = [l("x", 1, 0, 0)];
        assert!(feasible_sign_system(&lines, &[1]).unwrap());
        assert!(feasible_sign_system(&lines, &[0]).unwrap());
    }

    #[test]
    fn opposite_orientation_same_boundary() {
        let lines = [l("p", 1, 0, 0), l("q", -1, 0, 0)];
        assert!(!feasible_sign_system(&lines, &[0, 0]).unwrap());
        // x >= 0 and -x >= 0 meet on the line itself.
        assert!(feasible_sign_system(&lines, &[1, 1]).unwrap());
        assert_eq!(enumerate_cells(&lines).unwrap().len(), 3);
    }

    #[test]
    fn triangle_interior() {
        let lines = [l("x", 1, 0, 0), l("y", 0, 1, 0), l("s", 1, 1, -10)];
        assert!(feasible_sign_system(&lines, &[1, 1, 0]).unwrap());
        assert!(feasible_sign_system(&lines, &[1, 1]).is_err());
    }

    #[test]
    fn crossing_and_parallel_counts() {
        let cross = [l("x", 1, 0, 0), l("y", 0, 1, 0)];
        assert_eq!(enumerate_cells(&cross).unwrap().len(), 4);
        for n in 1..=5 {
            let par: Vec<LineAttr> = (0..n)
                .map(|i| l(&format!("p{i}"), 1, 0, -(i as i64)))
                .collect();
            assert_eq!(enumerate_cells(&par).unwrap().len(), n + 1);
        }
        let gp = [l("a", 1, 0, 0), l("b", 0, 1, 0), l("c", 1, 1, -1)];
        assert!(in_general_position(&gp));
        assert_eq!(enumerate_cells(&gp).unwrap().len(), 7);
    }

    #[test]
    fn concurrent_lines_lose_a_cell() {
        let lines = [l("a", 1, 0, 0), l("b", 0, 1, 0), l("c", 1, 1, 0)];
        assert!(!in_general_position(&lines));
        assert_eq!(enumerate_cells(&lines).unwrap().len(), 6);
    }

    #[test]
    fn degenerate_and_cap() {
        assert!(matches!(
            LineAttr::from_ints("z", 0, 0, 3),
            Err(Error::DegenerateLine(_))
        ));
        let many: Vec<LineAttr> = (0..17).map(|i| l(&format!("m{i}"), 1, 0, i)).collect();
        assert!(matches!(
            enumerate_cells(&many),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn parse_lines_format() {
        let text = "# two axes\nx 1 0 0\ny 0 1/2 -3/4 # half\n";
        let lines = parse_lines(text).unwrap();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].b, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(parse_lines(&format_lines(&lines)).unwrap(), lines);
        assert!(matches!(
            parse_lines("x 1 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_lines("x 1 q 0"),
            Err(Error::Parse {
                line: 1,
                column: 5,
                ..
            })
        ));
        assert!(parse_lines("x 0 0 1").is_err());
        assert!(parse_lines("x 1 0 0\nx 0 1 0").is_err());
        assert!(parse_lines("x 1/0 0 0").is_err());
    }

    #[test]
    fn general_position_generator() {
        for n in 0..=8 {
            let lines = random_general_position_lines(n, 7 + n as u64);
            assert_eq!(lines.len(), n);
            assert!(in_general_position(&lines));
            assert_eq!(
                enumerate_cells(&lines).unwrap().len(),
                general_position_cells(n)
            );
        }
    }
}
