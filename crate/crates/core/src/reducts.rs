//! Tests, reducts, and the exact minimum reduct cardinality `R(T)`.
//!
//! A column set is a test exactly when it hits the differing-column set of
//! every pair of rows with different decisions, so `R(T)` is a minimum
//! hitting set problem over those sets. [`min_reduct`] solves it exactly by
//! branch and bound after removing duplicate and dominated pair sets.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{AttributeSet, Decision, DecisionTable, Symbol};

/// Default `cap` for [`enumerate_reducts`].
pub const DEFAULT_REDUCT_CAP: usize = 10_000;

/// Largest dimension [`brute_force_r`] accepts by default.
pub const DEFAULT_BRUTE_FORCE_DIM: usize = 20;

/// Two rows with different decisions and the columns where they differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscernibilityPair {
    pub rows: (usize, usize),
    pub differing: AttributeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductResult {
    pub reduct: AttributeSet,
    pub cardinality: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductEnumeration {
    pub reducts: Vec<AttributeSet>,
    /// True when `cap` was reached before the enumeration finished.
    pub truncated: bool,
}

/// Whether any two rows with different decisions differ on some column of
/// `columns`.
pub fn is_test(table: &DecisionTable, columns: &AttributeSet) -> Result<bool> {
    columns.validate(table.dim())?;
    let idx = columns.indices();
    let mut seen: HashMap<Vec<Symbol>, Decision> = HashMap::with_capacity(table.num_rows());
    for row in table.rows() {
        let key: Vec<Symbol> = idx.iter().map(|&i| row.values[i]).collect();
        match seen.get(&key) {
            Some(&d) if d != row.decision => return Ok(false),
            Some(_) => {}
            None => {
                seen.insert(key, row.decision);
            }
        }
    }
    Ok(true)
}

pub fn discernibility_pairs(table: &DecisionTable) -> Vec<DiscernibilityPair> {
    let rows = table.rows();
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].decision == rows[j].decision {
                continue;
            }
            let differing = AttributeSet::new(
                (0..table.dim()).filter(|&c| rows[i].values[c] != rows[j].values[c]),
            );
            out.push(DiscernibilityPair {
                rows: (i, j),
                differing,
            });
        }
    }
    out
}

/// Differing-column sets of all decision-distinct row pairs, deduplicated
/// and with every set that contains another set removed. A column set hits
/// all of these exactly when it is a test.
pub(crate) fn cover_sets(table: &DecisionTable) -> Vec<FixedBitSet> {
    let dim = table.dim();
    let rows = table.rows();
    let mut unique: HashSet<FixedBitSet> = HashSet::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].decision == rows[j].decision {
                continue;
            }
            let mut mask = FixedBitSet::with_capacity(dim);
            for c in 0..dim {
                if rows[i].values[c] != rows[j].values[c] {
                    mask.insert(c);
                }
            }
            unique.insert(mask);
        }
    }
    let mut sets: Vec<FixedBitSet> = unique.into_iter().collect();
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    let mut kept: Vec<FixedBitSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// Lower bound on the hitting set size: greedily pack pairwise disjoint
/// sets, smallest first; each needs its own column.
fn packing_bound(sets: &[&FixedBitSet], dim: usize) -> usize {
    let mut order: Vec<&FixedBitSet> = sets.to_vec();
    order.sort_by_key(|s| s.count_ones(..));
    let mut used = FixedBitSet::with_capacity(dim);
    let mut count = 0;
    for s in order {
        if s.is_disjoint(&used) {
            used.union_with(s);
            count += 1;
        }
    }
    count
}

fn greedy_cover(sets: &[FixedBitSet], dim: usize) -> Vec<usize> {
    let mut uncovered: Vec<&FixedBitSet> = sets.iter().collect();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = (0..dim)
            .max_by_key(|&c| {
                (
                    uncovered.iter().filter(|s| s.contains(c)).count(),
                    std::cmp::Reverse(c),
                )
            })
            .expect("nonempty sets imply dim > 0");
        chosen.push(best);
        uncovered.retain(|s| !s.contains(best));
    }
    chosen
}

struct BranchAndBound<'a> {
    dim: usize,
    best: usize,
    sets: &'a [FixedBitSet],
}

impl BranchAndBound<'_> {
    /// `uncovered` indexes into `sets`; `banned` columns may not be chosen
    /// in this subtree.
    fn search(&mut self, uncovered: &[usize], banned: &FixedBitSet, depth: usize) {
        if uncovered.is_empty() {
            self.best = self.best.min(depth);
            return;
        }
        if depth + 1 >= self.best {
            return;
        }
        let mut live: Vec<FixedBitSet> = Vec::with_capacity(uncovered.len());
        for &i in uncovered {
            let mut s = self.sets[i].clone();
            s.difference_with(banned);
            if s.is_clear() {
                return;
            }
            live.push(s);
        }
        let refs: Vec<&FixedBitSet> = live.iter().collect();
        if depth + packing_bound(&refs, self.dim) >= self.best {
            return;
        }
        let pivot = (0..live.len())
            .min_by_key(|&i| live[i].count_ones(..))
            .expect("uncovered is nonempty");
        let mut banned = banned.clone();
        for c in live[pivot].ones().collect::<Vec<_>>() {
            let rest: Vec<usize> = uncovered
                .iter()
                .copied()
                .filter(|&i| !self.sets[i].contains(c))
                .collect();
            self.search(&rest, &banned, depth + 1);
            // Later branches exclude `c`: covers using it were explored here.
            banned.insert(c);
        }
    }
}

/// Lexicographically first hitting set of exactly `slots` columns, choosing
/// columns in increasing order starting at `start`.
fn lex_first_cover(
    sets: &[FixedBitSet],
    dim: usize,
    start: usize,
    slots: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let uncovered: Vec<&FixedBitSet> = sets
        .iter()
        .filter(|s| !chosen.iter().any(|&c| s.contains(c)))
        .collect();
    if uncovered.is_empty() {
        return true;
    }
    if slots == 0 {
        return false;
    }
    // Skipping past column `c` abandons every set whose last column is < c.
    let mut limit = usize::MAX;
    let mut tails = Vec::with_capacity(uncovered.len());
    for s in &uncovered {
        let mut tail = (*s).clone();
        tail.remove_range(..start.min(dim));
        match tail.maximum() {
            None => return false,
            Some(m) => limit = limit.min(m),
        }
        tails.push(tail);
    }
    let tail_refs: Vec<&FixedBitSet> = tails.iter().collect();
    if packing_bound(&tail_refs, dim) > slots {
        return false;
    }
    for c in start..=limit {
        if !uncovered.iter().any(|s| s.contains(c)) {
            continue;
        }
        chosen.push(c);
        if lex_first_cover(sets, dim, c + 1, slots - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// An exact minimum-cardinality test, lexicographically smallest among all
/// minimum tests. Empty when `cl(T) < 2`.
pub fn min_reduct(table: &DecisionTable) -> ReductResult {
    let dim = table.dim();
    let sets = cover_sets(table);
    if sets.is_empty() {
        return ReductResult {
            reduct: AttributeSet::empty(),
            cardinality: 0,
        };
    }
    let greedy = greedy_cover(&sets, dim);
    let mut bnb = BranchAndBound {
        dim,
        best: greedy.len(),
        sets: &sets,
    };
    let all: Vec<usize> = (0..sets.len()).collect();
    bnb.search(&all, &FixedBitSet::with_capacity(dim), 0);
    let optimum = bnb.best;

    let mut chosen = Vec::with_capacity(optimum);
    let found = lex_first_cover(&sets, dim, 0, optimum, &mut chosen);
    assert!(found, "a cover of the optimal size must exist");
    ReductResult {
        cardinality: chosen.len(),
        reduct: AttributeSet::new(chosen),
    }
}

/// `R(T)`.
pub fn reduct_cardinality(table: &DecisionTable) -> usize {
    min_reduct(table).cardinality
}

/// Enumerates minimal covers of exactly `size` columns in lexicographic
/// order, appending to `out` until it holds `cap` sets. Returns false when
/// stopped by the cap.
fn minimal_covers_of_size(
    sets: &[FixedBitSet],
    dim: usize,
    size: usize,
    cap: usize,
    out: &mut Vec<AttributeSet>,
) -> bool {
    fn has_private_set(sets: &[FixedBitSet], chosen: &[usize], c: usize) -> bool {
        sets.iter()
            .any(|s| s.contains(c) && chosen.iter().all(|&o| o == c || !s.contains(o)))
    }

    fn go(
        sets: &[FixedBitSet],
        dim: usize,
        start: usize,
        slots: usize,
        chosen: &mut Vec<usize>,
        cap: usize,
        out: &mut Vec<AttributeSet>,
    ) -> bool {
        // A column with no private set stays redundant in every extension.
        if chosen.iter().any(|&c| !has_private_set(sets, chosen, c)) {
            return true;
        }
        let uncovered: Vec<&FixedBitSet> = sets
            .iter()
            .filter(|s| !chosen.iter().any(|&c| s.contains(c)))
            .collect();
        if slots == 0 {
            if uncovered.is_empty() {
                if out.len() >= cap {
                    return false;
                }
                out.push(AttributeSet::new(chosen.iter().copied()));
            }
            return true;
        }
        if uncovered.is_empty() {
            // Any further column would be redundant.
            return true;
        }
        let mut limit = usize::MAX;
        for s in &uncovered {
            match s.ones().rfind(|&c| c >= start) {
                None => return true,
                Some(m) => limit = limit.min(m),
            }
        }
        let upper = dim.saturating_sub(slots);
        for c in start..=limit.min(upper) {
            chosen.push(c);
            let keep_going = go(sets, dim, c + 1, slots - 1, chosen, cap, out);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    go(sets, dim, 0, size, &mut Vec::with_capacity(size), cap, out)
}

/// All reducts, by cardinality then lexicographically, stopping at `cap`.
pub fn enumerate_reducts(table: &DecisionTable, cap: usize) -> Result<ReductEnumeration> {
    if cap == 0 {
        return Err(Error::CapExceeded {
            what: "reduct cap must be at least 1; requested",
            got: 0,
            cap: 1,
        });
    }
    let dim = table.dim();
    let sets = cover_sets(table);
    if sets.is_empty() {
        return Ok(ReductEnumeration {
            reducts: vec![AttributeSet::empty()],
            truncated: false,
        });
    }
    let smallest = min_reduct(table).cardinality;
    let largest = dim.min(sets.len());
    let mut reducts = Vec::new();
    for size in smallest..=largest {
        if !minimal_covers_of_size(&sets, dim, size, cap, &mut reducts) {
            return Ok(ReductEnumeration {
                reducts,
                truncated: true,
            });
        }
    }
    Ok(ReductEnumeration {
        reducts,
        truncated: false,
    })
}

/// Whether `columns` is a reduct: a test none of whose one-smaller subsets
/// is a test.
pub fn is_reduct(table: &DecisionTable, columns: &AttributeSet) -> Result<bool> {
    if !is_test(table, columns)? {
        return Ok(false);
    }
    for &c in columns.indices() {
        if is_test(table, &columns.without(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R(T)` by scanning all column subsets in order of size. Independent of
/// the pair machinery; meant as an oracle.
pub fn brute_force_r(table: &DecisionTable, max_dim: usize) -> Result<usize> {
    let dim = table.dim();
    if dim > max_dim {
        return Err(Error::CapExceeded {
            what: "table dimension",
            got: dim,
            cap: max_dim,
        });
    }
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); dim + 1];
    for mask in 0u64..(1u64 << dim) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (size, masks) in by_size.iter().enumerate() {
        for &mask in masks {
            let cols = AttributeSet::new((0..dim).filter(|&c| mask >> c & 1 == 1));
            if is_test(table, &cols)? {
                return Ok(size);
            }
        }
    }
    unreachable!("the full column set is always a test")
}
