//! Quasicompleteness witnesses and the dimension `I(T)`.
//!
//! A pattern set is quasicomplete when some choice of a two-value subset per
//! column has its full product inside the set. Decisions play no role, so
//! everything here works on row tuples only.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{Alphabet, AttributeSet, DecisionTable, Symbol};

/// Largest dimension [`brute_force_i`] accepts by default.
pub const DEFAULT_BRUTE_FORCE_DIM: usize = 10;

/// One ordered pair of distinct symbols per column, smaller index first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Witness {
    pub pairs: Vec<(Symbol, Symbol)>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `{a,b} {c,d} ...` using the alphabet's tokens.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        self.pairs
            .iter()
            .map(|&(a, b)| format!("{{{},{}}}", alphabet.symbol(a), alphabet.symbol(b)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The same pair on each of `n` columns.
    pub fn uniform(pair: (Symbol, Symbol), n: usize) -> Self {
        Witness {
            pairs: vec![pair; n],
        }
    }

    /// Whether the full product lies inside `patterns`.
    pub fn holds_in(&self, patterns: &[Vec<Symbol>]) -> bool {
        let present: HashSet<&[Symbol]> = patterns.iter().map(Vec::as_slice).collect();
        self.product()
            .iter()
            .all(|t| present.contains(t.as_slice()))
    }

    /// Every tuple of the product of the pairs.
    pub fn product(&self) -> Vec<Vec<Symbol>> {
        let n = self.pairs.len();
        (0..1usize << n)
            .map(|m| {
                self.pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if m >> (n - 1 - i) & 1 == 0 { a } else { b })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShatterResult {
    pub dimension: usize,
    pub columns: AttributeSet,
    pub witness: Witness,
}

fn check_ragged(patterns: &[Vec<Symbol>]) -> Result<usize> {
    let n = patterns.first().map_or(0, Vec::len);
    if let Some(p) = patterns.iter().find(|p| p.len() != n) {
        return Err(Error::RaggedPatterns {
            expected: n,
            got: p.len(),
        });
    }
    Ok(n)
}

/// Finds two-value subsets `B_1..B_n` whose product lies inside `patterns`,
/// or `None`. The first witness in lexicographic pair order is returned.
pub fn quasicomplete_witness(patterns: &[Vec<Symbol>]) -> Result<Option<Witness>> {
    let n = check_ragged(patterns)?;
    let unique: Vec<&Vec<Symbol>> = patterns
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if unique.is_empty() {
        return Ok(None);
    }
    if unique.len() < 1usize.checked_shl(n as u32).unwrap_or(usize::MAX) {
        return Ok(None);
    }
    let mut pairs = Vec::with_capacity(n);
    Ok(extend_witness(&unique, 0, &mut pairs).then_some(Witness { pairs }))
}

/// `live` holds the patterns whose first `column` coordinates lie in the
/// chosen pairs. The product is covered iff, after each column, the live
/// patterns show all `2^(column+1)` prefixes.
fn extend_witness(live: &[&Vec<Symbol>], column: usize, pairs: &mut Vec<(Symbol, Symbol)>) -> bool {
    let n = live[0].len();
    if column == n {
        return true;
    }
    let values: BTreeSet<Symbol> = live.iter().map(|p| p[column]).collect();
    let values: Vec<Symbol> = values.into_iter().collect();
    let need = 1usize << (column + 1);
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            let next: Vec<&Vec<Symbol>> = live
                .iter()
                .copied()
                .filter(|p| p[column] == a || p[column] == b)
                .collect();
            if next.len() < 1usize.checked_shl(n as u32).unwrap_or(usize::MAX) {
                continue;
            }
            let prefixes: HashSet<&[Symbol]> = next.iter().map(|p| &p[..=column]).collect();
            if prefixes.len() < need {
                continue;
            }
            pairs.push((a, b));
            if extend_witness(&next, column + 1, pairs) {
                return true;
            }
            pairs.pop();
        }
    }
    false
}

fn project_patterns(table: &DecisionTable, columns: &[usize]) -> Vec<Vec<Symbol>> {
    let set: BTreeSet<Vec<Symbol>> = table
        .rows()
        .iter()
        .map(|r| columns.iter().map(|&c| r.values[c]).collect())
        .collect();
    set.into_iter().collect()
}

/// `I(T)`: the largest column set whose projected tuple set admits a
/// witness, searched level by level. Witnesses are closed under taking
/// column subsets, so a candidate of size `m + 1` is only tried when all of
/// its `m`-subsets succeeded.
pub fn shattering_dimension(table: &DecisionTable) -> ShatterResult {
    let dim = table.dim();
    let rows = table.num_rows();
    let mut best = ShatterResult {
        dimension: 0,
        columns: AttributeSet::empty(),
        witness: Witness::default(),
    };
    // 2^m distinct rows are needed for an m-dimensional witness.
    let max_level = if rows == 0 {
        0
    } else {
        (usize::BITS - 1 - rows.leading_zeros()) as usize
    };

    let mut level: Vec<(Vec<usize>, Witness)> = Vec::new();
    for c in 0..dim {
        if let Some(w) = quasicomplete_witness(&project_patterns(table, &[c])).expect("uniform") {
            level.push((vec![c], w));
        }
    }
    let mut size = 1;
    while !level.is_empty() {
        let (cols, w) = &level[0];
        best = ShatterResult {
            dimension: size,
            columns: AttributeSet::new(cols.iter().copied()),
            witness: w.clone(),
        };
        if size >= max_level {
            break;
        }
        let passing: HashSet<&[usize]> = level.iter().map(|(c, _)| c.as_slice()).collect();
        let mut next = Vec::new();
        for i in 0..level.len() {
            for j in i + 1..level.len() {
                let (a, b) = (&level[i].0, &level[j].0);
                if a[..size - 1] != b[..size - 1] {
                    // Level is sorted, so no later `b` shares the prefix.
                    break;
                }
                let mut cand = a.clone();
                cand.push(b[size - 1]);
                let all_subsets_pass = (0..cand.len() - 2).all(|drop| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &c)| c)
                        .collect();
                    passing.contains(sub.as_slice())
                });
                if !all_subsets_pass {
                    continue;
                }
                let patterns = project_patterns(table, &cand);
                if let Some(w) = quasicomplete_witness(&patterns).expect("uniform") {
                    next.push((cand, w));
                }
            }
        }
        level = next;
        size += 1;
    }
    best
}

/// `I(T)` by trying every column subset against every choice of value
/// pairs from the whole alphabet. Meant as an oracle.
pub fn brute_force_i(table: &DecisionTable, max_dim: usize) -> Result<usize> {
    let dim = table.dim();
    if dim > max_dim {
        return Err(Error::CapExceeded {
            what: "table dimension",
            got: dim,
            cap: max_dim,
        });
    }
    let k = table.k() as Symbol;
    let all_pairs: Vec<(Symbol, Symbol)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    let rows = table.num_rows();
    let top = (0..=dim).rev().find(|&m| rows >= 1 << m).unwrap_or(0);
    for size in (1..=top).rev() {
        for mask in 0u32..(1 << dim) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let cols: Vec<usize> = (0..dim).filter(|&c| mask >> c & 1 == 1).collect();
            let present: HashSet<Vec<Symbol>> =
                project_patterns(table, &cols).into_iter().collect();
            let mut choice = vec![0usize; size];
            loop {
                let witness = Witness {
                    pairs: choice.iter().map(|&i| all_pairs[i]).collect(),
                };
                if witness.product().iter().all(|t| present.contains(t)) {
                    return Ok(size);
                }
                // Odometer over pair choices.
                let mut pos = 0;
                while pos < size {
                    choice[pos] += 1;
                    if choice[pos] < all_pairs.len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == size {
                    break;
                }
            }
        }
    }
    Ok(0)
}

/// Whether attributes with realized value vectors `patterns` form an
/// independent set of size `p`.
pub fn check_independent(patterns: &[Vec<Symbol>], p: usize) -> Result<bool> {
    for t in patterns {
        if t.len() != p {
            return Err(Error::RaggedPatterns {
                expected: p,
                got: t.len(),
            });
        }
    }
    Ok(quasicomplete_witness(patterns)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{DecisionMode, Row};

    fn pats(rows: &[&[u32]]) -> Vec<Vec<Symbol>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn witness_examples() {
        let w = quasicomplete_witness(&pats(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])).unwrap();
        assert_eq!(w.unwrap().pairs, vec![(0, 1), (0, 1)]);
        assert_eq!(
            quasicomplete_witness(&pats(&[&[0, 0], &[0, 1], &[1, 0]])).unwrap(),
            None
        );
        // signs: -1 -> 0, 0 -> 1, +1 -> 2
        let w = quasicomplete_witness(&pats(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2], &[1, 1]]))
            .unwrap()
            .unwrap();
        assert_eq!(w.pairs, vec![(0, 2), (0, 2)]);
        assert!(quasicomplete_witness(&pats(&[&[0, 0], &[1]])).is_err());
    }

    #[test]
    fn explicit_witnesses() {
        let square = pats(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2], &[1, 1]]);
        assert!(Witness::uniform((0, 2), 2).holds_in(&square));
        assert!(!Witness::uniform((0, 1), 2).holds_in(&square));
        assert!(Witness::default().holds_in(&[vec![]]));
        assert!(!Witness::default().holds_in(&square));
    }

    #[test]
    fn empty_tuples_are_trivially_quasicomplete() {
        let w = quasicomplete_witness(&[vec![]]).unwrap();
        assert_eq!(w, Some(Witness::default()));
    }

    #[test]
    fn dimension_examples() {
        for n in 0..=5 {
            let cube = DecisionTable::complete_cube(n, &DecisionMode::Distinct, 0).unwrap();
            assert_eq!(shattering_dimension(&cube).dimension, n);
            assert_eq!(brute_force_i(&cube, 10).unwrap(), n);
        }
        let single = DecisionTable::new(
            Alphabet::binary(),
            vec!["a".into(), "b".into()],
            vec![Row {
                values: vec![1, 0],
                decision: 0,
            }],
        )
        .unwrap();
        let r = shattering_dimension(&single);
        assert_eq!(r.dimension, 0);
        assert!(r.witness.is_empty());
        assert_eq!(brute_force_i(&single, 10).unwrap(), 0);
    }

    #[test]
    fn two_rows_give_one() {
        let t = DecisionTable::new(
            Alphabet::signs(),
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Row {
                    values: vec![0, 1, 2],
                    decision: 0,
                },
                Row {
                    values: vec![0, 2, 2],
                    decision: 0,
                },
            ],
        )
        .unwrap();
        let r = shattering_dimension(&t);
        assert_eq!(r.dimension, 1);
        assert_eq!(r.columns, AttributeSet::new([1]));
        assert_eq!(r.witness.pairs, vec![(1, 2)]);
        assert_eq!(brute_force_i(&t, 10).unwrap(), 1);
    }

    #[test]
    fn independence_requires_matching_length() {
        assert!(check_independent(&pats(&[&[0, 1]]), 3).is_err());
        assert!(check_independent(&pats(&[&[0], &[1]]), 1).unwrap());
    }
}
