use std::collections::BTreeSet;

use dtab_core::lines::{
    build_line_table, enumerate_cells, general_position_cells, random_general_position_lines,
    random_line,
};
use dtab_core::poly::{
    enumerate_sign_vectors, random_poly_system, random_rational, signs_at_rational, Poly,
};
use dtab_core::rational::{int, ratio};
use dtab_core::shattering::shattering_dimension;
use dtab_core::{DecisionMode, LineAttr, RatPoly, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Point = (BigRational, BigRational);

fn pattern(lines: &[LineAttr], p: &Point) -> Vec<u32> {
    lines.iter().map(|l| l.value_at(&p.0, &p.1)).collect()
}

fn random_lines(n: usize, seed: u64) -> Vec<LineAttr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Small coefficients make parallel and concurrent lines common.
    (0..n)
        .map(|i| random_line(&mut rng, format!("l{i}"), 3))
        .collect()
}

/// Points touching every face of the arrangement: each vertex, a point on
/// every edge (between consecutive crossings and beyond the last ones), and
/// tiny offsets from all of these in eight directions.
fn structured_points(lines: &[LineAttr]) -> Vec<Point> {
    let eps = ratio(1, 1_000_000_000_000);
    let far = int(1_000_000);
    let mut base: Vec<Point> = Vec::new();
    for l in lines {
        // Parametrize l as p0 + t * (-b, a).
        let norm = &l.a * &l.a + &l.b * &l.b;
        let p0 = (-&l.a * &l.c / &norm, -&l.b * &l.c / &norm);
        let dir = (-l.b.clone(), l.a.clone());
        let at = |t: &BigRational| (&p0.0 + &dir.0 * t, &p0.1 + &dir.1 * t);
        let mut ts: BTreeSet<BigRational> = BTreeSet::new();
        for m in lines {
            if let Some(q) = l.intersection(m) {
                let t = if !dir.0.is_zero() {
                    (&q.0 - &p0.0) / &dir.0
                } else {
                    (&q.1 - &p0.1) / &dir.1
                };
                ts.insert(t);
            }
        }
        let ts: Vec<BigRational> = ts.into_iter().collect();
        let mut params = vec![-&far, far.clone(), BigRational::zero()];
        params.extend(ts.iter().cloned());
        params.extend(ts.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
        if let (Some(lo), Some(hi)) = (ts.first(), ts.last()) {
            params.push(lo - int(1));
            params.push(hi + int(1));
        }
        base.extend(params.iter().map(at));
    }
    base.push((int(0), int(0)));
    let mut out = Vec::new();
    for p in base {
        for dx in -1..=1 {
            for dy in -1..=1 {
                out.push((&p.0 + &eps * int(dx), &p.1 + &eps * int(dy)));
            }
        }
    }
    out
}

#[test]
fn random_points_land_in_enumerated_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for system in 0..40 {
        let lines = random_lines(1 + system % 6, system as u64);
        let cells: BTreeSet<Vec<u32>> = enumerate_cells(&lines).unwrap().into_iter().collect();
        for _ in 0..1000 {
            let p = (
                random_rational(&mut rng, 10, 7),
                random_rational(&mut rng, 10, 7),
            );
            assert!(cells.contains(&pattern(&lines, &p)), "{lines:?} at {p:?}");
        }
    }
}

#[test]
fn enumerated_cells_equal_structured_samples() {
    for system in 0..60 {
        let lines = random_lines(1 + system % 6, 1000 + system as u64);
        let cells: BTreeSet<Vec<u32>> = enumerate_cells(&lines).unwrap().into_iter().collect();
        let seen: BTreeSet<Vec<u32>> = structured_points(&lines)
            .iter()
            .map(|p| pattern(&lines, p))
            .collect();
        assert_eq!(cells, seen, "{lines:?}");
    }
}

#[test]
fn general_position_counts_and_dimension() {
    for n in 1..=8 {
        for seed in 0..5 {
            let lines = random_general_position_lines(n, seed);
            assert_eq!(
                enumerate_cells(&lines).unwrap().len(),
                general_position_cells(n)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_tables_stay_within_growth(n in 1usize..=7, seed in any::<u64>()) {
        let lines = random_lines(n, seed);
        let t = build_line_table(&lines, &DecisionMode::Distinct, 0).unwrap();
        prop_assert!(t.num_rows() <= general_position_cells(n));
        prop_assert!(shattering_dimension(&t).dimension <= 2);
    }
}

/// Product of linear factors with known rational roots.
fn split_system(rng: &mut ChaCha8Rng, count: usize) -> (Vec<RatPoly>, Vec<BigRational>) {
    let mut all_roots = BTreeSet::new();
    let polys = (0..count)
        .map(|i| {
            let mut poly = Poly::from_ints(&[if rng.gen_bool(0.5) { 1 } else { -2 }]);
            for _ in 0..rng.gen_range(0..=4) {
                let r = ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3));
                poly = poly.mul(&Poly::linear_root(r.clone()));
                all_roots.insert(r);
            }
            if rng.gen_bool(0.2) {
                // No real roots.
                poly = poly.mul(&Poly::from_ints(&[1, 0, 1]));
            }
            RatPoly {
                name: format!("p{i}"),
                poly,
            }
        })
        .collect();
    (polys, all_roots.into_iter().collect())
}

#[test]
fn sign_vectors_match_known_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let count = rng.gen_range(1..=5);
        let (polys, roots) = split_system(&mut rng, count);
        let mut points = roots.clone();
        points.extend(roots.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
        let lo = roots.first().cloned().unwrap_or_else(BigRational::zero);
        let hi = roots.last().cloned().unwrap_or_else(BigRational::zero);
        points.push(lo - int(1));
        points.push(hi + int(1));
        let expected: BTreeSet<Vec<Sign>> = points
            .iter()
            .map(|x| signs_at_rational(&polys, x))
            .collect();
        let got: BTreeSet<Vec<Sign>> = enumerate_sign_vectors(&polys)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(got, expected, "{polys:?}");
    }
}

#[test]
fn random_rationals_land_in_enumerated_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for system in 0..50u64 {
        let polys = random_poly_system(1 + (system % 5) as usize, 6, system);
        let vectors: BTreeSet<Vec<Sign>> = enumerate_sign_vectors(&polys)
            .unwrap()
            .into_iter()
            .collect();
        for _ in 0..1000 {
            let x = random_rational(&mut rng, 12, 16);
            assert!(vectors.contains(&signs_at_rational(&polys, &x)));
        }
        // Zero vectors at roots are counted, so at most 2m + 1 vectors.
        let m = dtab_core::poly::total_distinct_roots(&polys);
        assert!(vectors.len() <= 2 * m + 1);
    }
}

#[test]
fn integer_roots_are_sampled_exactly() {
    let p = RatPoly {
        name: "p".into(),
        poly: Poly::linear_root(BigRational::from_integer(BigInt::from(3))),
    };
    let v = enumerate_sign_vectors(std::slice::from_ref(&p)).unwrap();
    assert_eq!(v, vec![vec![Sign::Neg], vec![Sign::Zero], vec![Sign::Pos]]);
}
