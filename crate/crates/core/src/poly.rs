//! Decision tables from sign patterns of univariate polynomials.
//!
//! The real line splits into finitely many cells on which every polynomial
//! has constant sign: the roots themselves and the open intervals between
//! them. Roots are isolated exactly with Sturm sequences over `BigRational`,
//! and the sign of a polynomial at an algebraic root is decided by a gcd test
//! (shared root gives 0) followed by interval refinement.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, ratio};
use crate::table::{Alphabet, DecisionMode, DecisionTable, Symbol};

/// Default bound on `p` for [`shatter_system`].
pub const DEFAULT_SHATTER_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: &BigRational) -> Sign {
        if v.is_negative() {
            Sign::Neg
        } else if v.is_zero() {
            Sign::Zero
        } else {
            Sign::Pos
        }
    }

    /// Index in [`Alphabet::signs`].
    pub fn symbol(self) -> Symbol {
        match self {
            Sign::Neg => 0,
            Sign::Zero => 1,
            Sign::Pos => 2,
        }
    }

    pub fn from_symbol(s: Symbol) -> Option<Sign> {
        match s {
            0 => Some(Sign::Neg),
            1 => Some(Sign::Zero),
            2 => Some(Sign::Pos),
            _ => None,
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-1",
            Sign::Zero => "0",
            Sign::Pos => "+1",
        })
    }
}

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    /// `x - root`.
    pub fn linear_root(root: BigRational) -> Self {
        Poly(vec![-root, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn sign_at_pos_infinity(&self) -> Sign {
        self.leading().map_or(Sign::Zero, Sign::of)
    }

    pub fn sign_at_neg_infinity(&self) -> Sign {
        let s = self.sign_at_pos_infinity();
        match self.degree() {
            Some(d) if d % 2 == 1 => s.flip(),
            _ => s,
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => Poly(self.0.iter().map(|c| c / l).collect()),
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each simple. Monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// A power of two strictly above every root's absolute value, from
    /// `|z| <= 2 max |c_i / c_n|^(1/(n-i))`. Dyadic bounds keep bisection
    /// endpoints dyadic.
    pub fn root_bound(&self) -> BigRational {
        let (Some(n), Some(lead)) = (self.degree(), self.leading()) else {
            return BigRational::one();
        };
        let lead = lead.abs();
        let mut e = 0usize;
        for (i, c) in self.0[..n].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = c.abs() / &lead;
            while BigRational::from_integer(BigInt::one() << (e * (n - i))) < r {
                e += 1;
            }
        }
        BigRational::from_integer(BigInt::one() << (e + 2))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A named polynomial attribute.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    pub name: String,
    pub poly: Poly,
}

impl RatPoly {
    pub fn new(name: impl Into<String>, coeffs: Vec<BigRational>) -> Self {
        RatPoly {
            name: name.into(),
            poly: Poly::new(coeffs),
        }
    }

    pub fn from_ints(name: impl Into<String>, coeffs: &[i64]) -> Self {
        RatPoly {
            name: name.into(),
            poly: Poly::from_ints(coeffs),
        }
    }
}

/// Sturm sequence of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_zero() {
            return SturmChain { chain };
        }
        let mut next = p.derivative();
        while !next.is_zero() {
            let r = chain.last().expect("nonempty").div_rem(&next).1.neg();
            chain.push(next);
            // Positive rescaling keeps every sign and curbs coefficient growth.
            let r = match r.leading() {
                Some(l) => {
                    let l = l.abs();
                    Poly(r.0.iter().map(|c| c / &l).collect())
                }
                None => r,
            };
            next = r;
        }
        SturmChain { chain }
    }

    fn count_variations(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::Zero;
        let mut v = 0;
        for s in signs.filter(|&s| s != Sign::Zero) {
            if last != Sign::Zero && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::count_variations(self.chain.iter().map(Poly::sign_at_neg_infinity))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::count_variations(self.chain.iter().map(Poly::sign_at_pos_infinity))
    }

    /// Distinct real roots in `(lo, hi]`; `lo` must not be a root.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all_roots(&self) -> usize {
        self.variations_at_neg_infinity()
            .saturating_sub(self.variations_at_pos_infinity())
    }
}

/// Open interval `(lo, hi)` holding exactly one root of some squarefree
/// polynomial; neither endpoint is a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / int(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// A point of `(lo, hi)` that is not a root of any polynomial in `avoid`.
fn split_point(lo: &BigRational, hi: &BigRational, avoid: &[&Poly]) -> BigRational {
    let width = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let m = lo + &width * ratio(num, den);
            if avoid.iter().all(|p| !p.eval(&m).is_zero()) {
                return m;
            }
        }
    }
    unreachable!()
}

/// Halves `iv` around the single root of squarefree `q` it contains.
fn refine(q: &Poly, iv: &mut RootInterval, also_avoid: &[&Poly]) {
    let mut avoid = vec![q];
    avoid.extend_from_slice(also_avoid);
    let m = split_point(&iv.lo, &iv.hi, &avoid);
    // A simple root is a sign change.
    if q.sign_at(&iv.lo) != q.sign_at(&m) {
        iv.hi = m;
    } else {
        iv.lo = m;
    }
}

/// Isolating intervals for the real roots of a nonzero polynomial, sorted.
pub fn isolate_roots(p: &RatPoly) -> Result<Vec<RootInterval>> {
    if p.poly.is_zero() {
        return Err(Error::ZeroPolynomial(p.name.clone()));
    }
    Ok(isolate_squarefree(&p.poly.squarefree()))
}

/// Isolating intervals narrowed to at most `width`.
pub fn isolate_roots_within(p: &RatPoly, width: &BigRational) -> Result<Vec<RootInterval>> {
    if !width.is_positive() {
        return Err(Error::BadSamplePoint(format!(
            "interval width {width} must be positive"
        )));
    }
    let q = p.poly.squarefree();
    let mut out = isolate_roots(p)?;
    for iv in &mut out {
        while &(&iv.hi - &iv.lo) > width {
            refine(&q, iv, &[]);
        }
    }
    Ok(out)
}

fn isolate_squarefree(q: &Poly) -> Vec<RootInterval> {
    if q.is_constant() {
        return Vec::new();
    }
    let sturm = SturmChain::new(q);
    let bound = q.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    // Depth-first, right half pushed first, so intervals come out sorted.
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count_roots(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let m = split_point(&lo, &hi, &[q]);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out
}

/// Sign of `p` at the root of squarefree `q` isolated by `iv`.
fn sign_at_root(p: &Poly, q: &Poly, iv: &RootInterval) -> Sign {
    if p.is_constant() {
        return p.sign_at_pos_infinity();
    }
    let g = p.gcd(q);
    if !g.is_constant() && g.sign_at(&iv.lo) != g.sign_at(&iv.hi) {
        return Sign::Zero;
    }
    let sturm = SturmChain::new(p);
    let mut iv = iv.clone();
    loop {
        let clean = !p.eval(&iv.lo).is_zero() && !p.eval(&iv.hi).is_zero();
        if clean && sturm.count_roots(&iv.lo, &iv.hi) == 0 {
            return p.sign_at(&iv.lo);
        }
        refine(q, &mut iv, &[p]);
    }
}

/// A representative point of one cell of a univariate arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SamplePoint {
    NegInfinity,
    Rational(BigRational),
    /// The `root`-th smallest real root of `context[poly]`.
    Root {
        poly: usize,
        root: usize,
    },
    PosInfinity,
}

/// Exact sign of `p` at `sample`; root samples refer into `context`.
pub fn sign_at(p: &RatPoly, sample: &SamplePoint, context: &[RatPoly]) -> Result<Sign> {
    match sample {
        SamplePoint::NegInfinity => Ok(p.poly.sign_at_neg_infinity()),
        SamplePoint::PosInfinity => Ok(p.poly.sign_at_pos_infinity()),
        SamplePoint::Rational(x) => Ok(p.poly.sign_at(x)),
        SamplePoint::Root { poly, root } => {
            let q = context.get(*poly).ok_or_else(|| {
                Error::BadSamplePoint(format!("polynomial {poly}, context has {}", context.len()))
            })?;
            if q.poly.is_zero() {
                return Err(Error::ZeroPolynomial(q.name.clone()));
            }
            let qs = q.poly.squarefree();
            let roots = isolate_squarefree(&qs);
            let iv = roots.get(*root).ok_or_else(|| {
                Error::BadSamplePoint(format!(
                    "root {root} of `{}`, which has {} real roots",
                    q.name,
                    roots.len()
                ))
            })?;
            Ok(sign_at_root(&p.poly, &qs, iv))
        }
    }
}

/// Polynomials whose sign never changes (constants, including zero).
pub fn constant_columns(polys: &[RatPoly]) -> Vec<usize> {
    polys
        .iter()
        .enumerate()
        .filter(|(_, p)| p.poly.is_constant())
        .map(|(i, _)| i)
        .collect()
}

/// Squarefree polynomial whose roots are all roots of all of `polys`.
fn union_of_roots(polys: &[RatPoly]) -> Poly {
    polys
        .iter()
        .filter(|p| !p.poly.is_constant())
        .fold(Poly::one(), |acc, p| acc.mul(&p.poly.squarefree()))
        .squarefree()
}

/// The realized sign vectors on the real line, sorted and distinct. The zero
/// polynomial is rejected.
pub fn enumerate_sign_vectors(polys: &[RatPoly]) -> Result<Vec<Vec<Sign>>> {
    enumerate_sign_vectors_with(polys, false)
}

/// As [`enumerate_sign_vectors`], optionally accepting the zero polynomial
/// as a constant-0 attribute.
pub fn enumerate_sign_vectors_with(polys: &[RatPoly], allow_zero: bool) -> Result<Vec<Vec<Sign>>> {
    if !allow_zero {
        if let Some(z) = polys.iter().find(|p| p.poly.is_zero()) {
            return Err(Error::ZeroPolynomial(z.name.clone()));
        }
    }
    let all = union_of_roots(polys);
    let roots = isolate_squarefree(&all);
    // Roots of each squarefree part are among the roots of `all`, so on an
    // isolating interval of `all` a polynomial either vanishes at the root,
    // and its squarefree part changes sign, or has no root at all.
    let parts: Vec<Poly> = polys.iter().map(|p| p.poly.squarefree()).collect();
    let at_root = |i: usize, iv: &RootInterval| {
        let p = &polys[i].poly;
        if p.is_constant() {
            p.sign_at_pos_infinity()
        } else if parts[i].sign_at(&iv.lo) != parts[i].sign_at(&iv.hi) {
            Sign::Zero
        } else {
            p.sign_at(&iv.lo)
        }
    };
    let mut vectors: BTreeSet<Vec<Sign>> = BTreeSet::new();
    vectors.insert(
        polys
            .iter()
            .map(|p| p.poly.sign_at_neg_infinity())
            .collect(),
    );
    vectors.insert(
        polys
            .iter()
            .map(|p| p.poly.sign_at_pos_infinity())
            .collect(),
    );
    for (i, iv) in roots.iter().enumerate() {
        vectors.insert((0..polys.len()).map(|i| at_root(i, iv)).collect());
        if i + 1 < roots.len() {
            // Strictly between this root and the next.
            let between = &iv.hi;
            vectors.insert(polys.iter().map(|p| p.poly.sign_at(between)).collect());
        }
    }
    Ok(vectors.into_iter().collect())
}

/// Distinct real roots of all polynomials together.
pub fn total_distinct_roots(polys: &[RatPoly]) -> usize {
    isolate_squarefree(&union_of_roots(polys)).len()
}

/// Sign vector at a rational point.
pub fn signs_at_rational(polys: &[RatPoly], x: &BigRational) -> Vec<Sign> {
    polys.iter().map(|p| p.poly.sign_at(x)).collect()
}

/// One row per realized sign vector over `{-1, 0, +1}`.
pub fn build_poly_table(
    polys: &[RatPoly],
    mode: &DecisionMode,
    seed: u64,
) -> Result<DecisionTable> {
    let vectors = enumerate_sign_vectors(polys)?;
    DecisionTable::from_patterns(
        Alphabet::signs(),
        polys.iter().map(|p| p.name.clone()).collect(),
        vectors
            .into_iter()
            .map(|v| v.into_iter().map(Sign::symbol).collect())
            .collect(),
        mode,
        seed,
    )
}

/// `p` polynomials realizing every vector of `{-1, +1}^p`.
///
/// At the base points `0, 1, ..., 2^p - 1`, attribute `i` must be `+1`
/// exactly where bit `i` (most significant first) of the point is set. The
/// polynomial is the product of `2x - (2j + 1)` over every `j` where that bit
/// flips between `j` and `j + 1`, negated if needed to get the sign at 0
/// right.
pub fn shatter_system(p: usize) -> Result<Vec<RatPoly>> {
    shatter_system_capped(p, DEFAULT_SHATTER_CAP)
}

pub fn shatter_system_capped(p: usize, cap: usize) -> Result<Vec<RatPoly>> {
    if p > cap {
        return Err(Error::CapExceeded {
            what: "shatter size",
            got: p,
            cap,
        });
    }
    let points = 1usize << p;
    let bit = |i: usize, j: usize| (j >> (p - 1 - i)) & 1 == 1;
    let mut out = Vec::with_capacity(p);
    for i in 0..p {
        let mut poly = Poly::one();
        for j in 0..points - 1 {
            if bit(i, j) != bit(i, j + 1) {
                poly = poly.mul(&Poly::from_ints(&[-(2 * j as i64 + 1), 2]));
            }
        }
        let want = if bit(i, 0) { Sign::Pos } else { Sign::Neg };
        if poly.sign_at(&BigRational::zero()) != want {
            poly = poly.neg();
        }
        out.push(RatPoly {
            name: format!("s{}", i + 1),
            poly,
        });
    }
    Ok(out)
}

/// Parses the `.poly` format: `name c0 c1 c2 ...` per line (ascending
/// degree, rationals as `p/q`), `#` comments, optional `vars: 1` directive.
pub fn parse_polys(text: &str) -> Result<Vec<RatPoly>> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((&name, coeffs)) = tokens.split_first() else {
            continue;
        };
        if name == "vars:" {
            match coeffs {
                ["1"] => continue,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "line {line_no}: only univariate polynomials (vars: 1) are supported; \
                         multivariate sign arrangements are not implemented"
                    )))
                }
            }
        }
        if coeffs.is_empty() {
            return Err(Error::parse(line_no, 1, "expected `name c0 c1 ...`"));
        }
        let mut parsed = Vec::with_capacity(coeffs.len());
        for &tok in coeffs {
            let col = tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
            if tok
                .chars()
                .any(|c| c.is_alphabetic() || c == '^' || c == '*')
            {
                return Err(Error::Unsupported(format!(
                    "line {line_no}, column {col}: `{tok}` looks symbolic; give ascending \
                     rational coefficients of a univariate polynomial (multivariate input \
                     is not supported)"
                )));
            }
            parsed.push(parse_rational(tok).map_err(|m| Error::parse(line_no, col, m))?);
        }
        if !names.insert(name) {
            return Err(Error::parse(
                line_no,
                1,
                format!("duplicate polynomial name `{name}`"),
            ));
        }
        out.push(RatPoly::new(name, parsed));
    }
    Ok(out)
}

pub fn format_polys(polys: &[RatPoly]) -> String {
    let mut out = String::new();
    for p in polys {
        out.push_str(&p.name);
        if p.poly.is_zero() {
            out.push_str(" 0");
        }
        for c in p.poly.coeffs() {
            out.push(' ');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

/// Seeded random system of `count` nonzero polynomials of degree between 1
/// and `max_degree`. Half are products of small linear and quadratic
/// factors, so repeated and shared roots show up regularly.
pub fn random_poly_system(count: usize, max_degree: usize, seed: u64) -> Vec<RatPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_degree = max_degree.max(1);
    (0..count)
        .map(|i| {
            let degree = rng.gen_range(1..=max_degree);
            let poly = if rng.gen_bool(0.5) {
                let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-6..=6)).collect();
                let mut lead = 0;
                while lead == 0 {
                    lead = rng.gen_range(-4..=4);
                }
                coeffs.push(lead);
                Poly::from_ints(&coeffs)
            } else {
                let mut poly = Poly::from_ints(&[
                    rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }
                ]);
                let mut d = 0;
                while d < degree {
                    if degree - d >= 2 && rng.gen_bool(0.3) {
                        // x^2 + b x + c, possibly without real roots.
                        poly = poly.mul(&Poly::from_ints(&[
                            rng.gen_range(-4..=4),
                            rng.gen_range(-3..=3),
                            1,
                        ]));
                        d += 2;
                    } else {
                        let root = ratio(rng.gen_range(-6..=6), rng.gen_range(1..=2));
                        poly = poly.mul(&Poly::linear_root(root));
                        d += 1;
                    }
                }
                poly
            };
            RatPoly {
                name: format!("p{}", i + 1),
                poly,
            }
        })
        .collect()
}

/// Uniformly random rational with numerator in `[-range*den, range*den]`.
pub fn random_rational(rng: &mut impl Rng, range: i64, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    BigRational::new(
        BigInt::from(rng.gen_range(-range * den..=range * den)),
        BigInt::from(den),
    )
}
