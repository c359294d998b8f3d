use std::collections::{BTreeSet, HashMap};

use dtab_core::bounds::{check_log_bound, check_projection_bound, check_row_count_bound};
use dtab_core::reducts::{
    brute_force_r, discernibility_pairs, enumerate_reducts, is_reduct, is_test, min_reduct,
};
use dtab_core::shattering::{brute_force_i, quasicomplete_witness, shattering_dimension};
use dtab_core::table::random_table;
use dtab_core::{Alphabet, AttributeSet, DecisionMode, DecisionTable, MergePolicy};
use proptest::prelude::*;

fn small_table() -> impl Strategy<Value = DecisionTable> {
    (2usize..=3, 1usize..=6, 1usize..=24, 1u64..=5, any::<u64>()).prop_map(
        |(k, dim, rows, classes, seed)| {
            let alphabet = Alphabet::numeric(k).unwrap();
            let capacity = k.pow(dim as u32);
            random_table(
                &alphabet,
                dim,
                rows.min(capacity),
                &DecisionMode::Random { classes },
                seed,
            )
            .unwrap()
        },
    )
}

/// Independent test check: rows grouped by their projection must agree.
fn oracle_is_test(table: &DecisionTable, mask: u32) -> bool {
    let mut seen = HashMap::new();
    for row in table.rows() {
        let key: Vec<u32> = (0..table.dim())
            .filter(|&c| mask >> c & 1 == 1)
            .map(|c| row.values[c])
            .collect();
        if *seen.entry(key).or_insert(row.decision) != row.decision {
            return false;
        }
    }
    true
}

/// All reducts by subset scan.
fn oracle_reducts(table: &DecisionTable) -> BTreeSet<Vec<usize>> {
    let dim = table.dim();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << dim {
        if !oracle_is_test(table, mask) {
            continue;
        }
        let minimal = (0..dim)
            .filter(|&c| mask >> c & 1 == 1)
            .all(|c| !oracle_is_test(table, mask & !(1 << c)));
        if minimal {
            out.insert((0..dim).filter(|&c| mask >> c & 1 == 1).collect());
        }
    }
    out
}

/// VC dimension of a binary pattern set: largest shattered column subset.
fn oracle_vc(table: &DecisionTable) -> usize {
    let dim = table.dim();
    let rows: Vec<u32> = table
        .rows()
        .iter()
        .map(|r| r.values.iter().enumerate().fold(0, |m, (i, &v)| m | v << i))
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << dim {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let traces: BTreeSet<u32> = rows.iter().map(|r| r & mask).collect();
        if traces.len() == 1 << size {
            best = size;
        }
    }
    best
}

fn pow_at_least(k: usize, e: usize, target: usize) -> bool {
    (k as u128)
        .checked_pow(e as u32)
        .is_none_or(|v| v >= target as u128)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dtab_and_json_round_trip(t in small_table()) {
        prop_assert_eq!(DecisionTable::parse_dtab(&t.to_dtab()).unwrap(), t.clone());
        prop_assert_eq!(DecisionTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn projections_lie_in_closure(t in small_table(), mask in any::<u32>()) {
        let cols = AttributeSet::new((0..t.dim()).filter(|&c| mask >> c & 1 == 1));
        let p = t.project(&cols, MergePolicy::Earliest).unwrap();
        prop_assert!(t.closure_contains(&p).unwrap());
        prop_assert!(p.num_rows() <= t.num_rows());
        let relabelled = p.relabel_decisions(&vec![7; p.num_rows()]).unwrap();
        prop_assert!(t.closure_contains(&relabelled).unwrap());
    }

    #[test]
    fn min_reduct_matches_subset_scan(t in small_table()) {
        let r = min_reduct(&t);
        prop_assert_eq!(r.cardinality, brute_force_r(&t, 20).unwrap());
        prop_assert!(is_test(&t, &r.reduct).unwrap());
        prop_assert!(is_reduct(&t, &r.reduct).unwrap());
        // Lexicographically first among minimum reducts.
        let first = oracle_reducts(&t)
            .into_iter()
            .filter(|s| s.len() == r.cardinality)
            .min()
            .unwrap();
        prop_assert_eq!(r.reduct.indices(), first.as_slice());
    }

    #[test]
    fn test_iff_hits_every_pair(t in small_table(), mask in any::<u32>()) {
        let mask = mask & ((1 << t.dim()) - 1);
        let cols = AttributeSet::new((0..t.dim()).filter(|&c| mask >> c & 1 == 1));
        let hits = discernibility_pairs(&t)
            .iter()
            .all(|p| p.differing.indices().iter().any(|&c| cols.contains(c)));
        prop_assert_eq!(is_test(&t, &cols).unwrap(), hits);
        prop_assert_eq!(hits, oracle_is_test(&t, mask));
    }

    #[test]
    fn enumeration_lists_exactly_the_reducts(t in small_table()) {
        let e = enumerate_reducts(&t, 10_000).unwrap();
        prop_assert!(!e.truncated);
        let got: Vec<Vec<usize>> = e.reducts.iter().map(|s| s.indices().to_vec()).collect();
        let mut expected: Vec<Vec<usize>> = oracle_reducts(&t).into_iter().collect();
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bounds_hold(t in small_table()) {
        let r = min_reduct(&t).cardinality;
        prop_assert!(pow_at_least(t.k(), r, t.num_classes()));
        for report in [check_log_bound(&t), check_projection_bound(&t), check_row_count_bound(&t)] {
            prop_assert!(!report.failed(), "{}", report);
        }
    }

    #[test]
    fn shattering_matches_oracle(t in small_table()) {
        let s = shattering_dimension(&t);
        prop_assert_eq!(s.dimension, brute_force_i(&t, 10).unwrap());
        prop_assert_eq!(s.witness.len(), s.dimension);
        prop_assert!(t.num_rows() >= 1 << s.dimension);
        // The witness product is present on the reported columns.
        let present: BTreeSet<Vec<u32>> = t
            .rows()
            .iter()
            .map(|r| s.columns.indices().iter().map(|&c| r.values[c]).collect())
            .collect();
        for tuple in s.witness.product() {
            prop_assert!(present.contains(&tuple));
        }
    }

    #[test]
    fn witnesses_are_downward_closed(t in small_table()) {
        let s = shattering_dimension(&t);
        let cols = s.columns.indices();
        for drop in 0..cols.len() {
            let sub: Vec<usize> = cols.iter().copied().filter(|&c| c != cols[drop]).collect();
            let pats: Vec<Vec<u32>> = t
                .rows()
                .iter()
                .map(|r| sub.iter().map(|&c| r.values[c]).collect())
                .collect();
            prop_assert!(quasicomplete_witness(&pats).unwrap().is_some());
        }
    }

    #[test]
    fn binary_shattering_is_vc_dimension(
        dim in 1usize..=7,
        rows in 1usize..=60,
        seed in any::<u64>(),
    ) {
        let t = random_table(
            &Alphabet::binary(),
            dim,
            rows.min(1 << dim),
            &DecisionMode::Distinct,
            seed,
        )
        .unwrap();
        prop_assert_eq!(shattering_dimension(&t).dimension, oracle_vc(&t));
    }
}
