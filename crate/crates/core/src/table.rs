//! Decision tables over a finite alphabet, the closure operations that
//! generate `[T]`, and the `.dtab` / JSON formats.
//!
//! Rows are always stored in canonical order: lexicographic by tuple, with
//! symbols compared by their position in the alphabet. Every operation that
//! talks about "row index" refers to that order.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside an [`Alphabet`].
pub type Symbol = u32;

/// Decision label attached to a row.
pub type Decision = u64;

fn check_token(token: &str) -> Result<()> {
    if token.is_empty()
        || token == "->"
        || token.contains('#')
        || token.chars().any(char::is_whitespace)
    {
        return Err(Error::InvalidToken(token.to_string()));
    }
    Ok(())
}

/// The value set `B`, with a fixed canonical symbol order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            check_token(s)?;
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!["0".into(), "1".into()],
        }
    }

    /// `{-1, 0, +1}`, in that order.
    pub fn signs() -> Self {
        Alphabet {
            symbols: vec!["-1".into(), "0".into(), "+1".into()],
        }
    }

    /// `{0, 1, ..., k-1}` written as decimal tokens.
    pub fn numeric(k: usize) -> Result<Self> {
        Alphabet::new((0..k).map(|i| i.to_string()))
    }

    pub fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: Symbol) -> &str {
        &self.symbols[index as usize]
    }

    pub fn index_of(&self, token: &str) -> Option<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == token)
            .map(|i| i as Symbol)
    }
}

/// A set of column indices, kept sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeSet(Vec<usize>);

impl AttributeSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        AttributeSet(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        AttributeSet(Vec::new())
    }

    pub fn full(dim: usize) -> Self {
        AttributeSet((0..dim).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn without(&self, index: usize) -> Self {
        AttributeSet(self.0.iter().copied().filter(|&i| i != index).collect())
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        match self.0.last() {
            Some(&index) if index >= dim => Err(Error::IndexOutOfRange { index, dim }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    pub values: Vec<Symbol>,
    pub decision: Decision,
}

/// `(N, cl, dim)` of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableStats {
    pub rows: usize,
    pub classes: usize,
    pub dim: usize,
}

/// Which decision survives when projection merges equal rows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MergePolicy {
    /// Decision of the first row of the group in canonical order.
    #[default]
    Earliest,
    /// Decision of the last row of the group in canonical order.
    Latest,
    /// Smallest decision in the group.
    Smallest,
}

/// How decisions are attached to the rows of a generated table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionMode {
    /// Row `i` (canonical order) gets decision `i`.
    Distinct,
    Constant(Decision),
    /// Uniform in `0..classes`, drawn from the seed.
    Random {
        classes: Decision,
    },
    /// One decision per row, in canonical order.
    Explicit(Vec<Decision>),
}

impl DecisionMode {
    pub fn is_randomized(&self) -> bool {
        matches!(self, DecisionMode::Random { .. })
    }

    pub fn assign(&self, rows: usize, seed: u64) -> Result<Vec<Decision>> {
        match self {
            DecisionMode::Distinct => Ok((0..rows as Decision).collect()),
            DecisionMode::Constant(d) => Ok(vec![*d; rows]),
            DecisionMode::Random { classes } => {
                if *classes == 0 {
                    return Err(Error::DecisionMode("random:0".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok((0..rows).map(|_| rng.gen_range(0..*classes)).collect())
            }
            DecisionMode::Explicit(ds) => {
                if ds.len() != rows {
                    return Err(Error::DecisionMapLength {
                        got: ds.len(),
                        expected: rows,
                    });
                }
                Ok(ds.clone())
            }
        }
    }
}

impl FromStr for DecisionMode {
    type Err = Error;

    /// `distinct`, `constant`, `constant:<d>`, `random:<c>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DecisionMode(s.to_string());
        match s.split_once(':') {
            None if s == "distinct" => Ok(DecisionMode::Distinct),
            None if s == "constant" => Ok(DecisionMode::Constant(0)),
            Some(("constant", d)) => Ok(DecisionMode::Constant(d.parse().map_err(|_| bad())?)),
            Some(("random", c)) => {
                let classes: Decision = c.parse().map_err(|_| bad())?;
                if classes == 0 {
                    return Err(bad());
                }
                Ok(DecisionMode::Random { classes })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DecisionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionMode::Distinct => write!(f, "distinct"),
            DecisionMode::Constant(d) => write!(f, "constant:{d}"),
            DecisionMode::Random { classes } => write!(f, "random:{classes}"),
            DecisionMode::Explicit(_) => write!(f, "explicit"),
        }
    }
}

/// A `B`-decision table: named columns, pairwise distinct rows, one decision
/// per row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct DecisionTable {
    alphabet: Alphabet,
    attributes: Vec<String>,
    rows: Vec<Row>,
}

impl DecisionTable {
    /// Validates and canonicalizes.
    pub fn new(alphabet: Alphabet, attributes: Vec<String>, mut rows: Vec<Row>) -> Result<Self> {
        let mut seen = HashSet::new();
        for a in &attributes {
            check_token(a)?;
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateAttribute(a.clone()));
            }
        }
        let dim = attributes.len();
        let k = alphabet.k();
        for (r, row) in rows.iter().enumerate() {
            if row.values.len() != dim {
                return Err(Error::RowLength {
                    row: r,
                    got: row.values.len(),
                    expected: dim,
                });
            }
            if let Some(&value) = row.values.iter().find(|&&v| v as usize >= k) {
                return Err(Error::ValueOutOfRange { row: r, value, k });
            }
        }
        rows.sort_by(|a, b| a.values.cmp(&b.values));
        if let Some(w) = rows.windows(2).find(|w| w[0].values == w[1].values) {
            let tuple = w[0]
                .values
                .iter()
                .map(|&v| alphabet.symbol(v))
                .collect::<Vec<_>>()
                .join(" ");
            return Err(Error::DuplicateRow(tuple));
        }
        Ok(DecisionTable {
            alphabet,
            attributes,
            rows,
        })
    }

    /// Builds a table from raw tuples with decisions assigned by `mode`.
    /// Tuples are canonicalized before decisions are attached.
    pub fn from_patterns(
        alphabet: Alphabet,
        attributes: Vec<String>,
        mut patterns: Vec<Vec<Symbol>>,
        mode: &DecisionMode,
        seed: u64,
    ) -> Result<Self> {
        patterns.sort();
        let decisions = mode.assign(patterns.len(), seed)?;
        let rows = patterns
            .into_iter()
            .zip(decisions)
            .map(|(values, decision)| Row { values, decision })
            .collect();
        DecisionTable::new(alphabet, attributes, rows)
    }

    /// The complete table over `{0,1}^n`, columns `x1..xn`.
    pub fn complete_cube(n: usize, mode: &DecisionMode, seed: u64) -> Result<Self> {
        if n >= usize::BITS as usize - 1 {
            return Err(Error::CapExceeded {
                what: "cube dimension",
                got: n,
                cap: usize::BITS as usize - 2,
            });
        }
        let patterns = (0..1usize << n)
            .map(|m| (0..n).map(|i| ((m >> (n - 1 - i)) & 1) as Symbol).collect())
            .collect();
        DecisionTable::from_patterns(
            Alphabet::binary(),
            (1..=n).map(|i| format!("x{i}")).collect(),
            patterns,
            mode,
            seed,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.alphabet.k()
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.attributes.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_classes(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.decision)
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn stats(&self) -> TableStats {
        TableStats {
            rows: self.num_rows(),
            classes: self.num_classes(),
            dim: self.dim(),
        }
    }

    /// Row tuples without decisions, canonical order.
    pub fn patterns(&self) -> Vec<Vec<Symbol>> {
        self.rows.iter().map(|r| r.values.clone()).collect()
    }

    /// Restricts to the columns in `columns` and merges equal rows.
    pub fn project(&self, columns: &AttributeSet, policy: MergePolicy) -> Result<DecisionTable> {
        columns.validate(self.dim())?;
        let idx = columns.indices();
        let mut order: Vec<Vec<Symbol>> = Vec::new();
        let mut groups: HashMap<Vec<Symbol>, Decision> = HashMap::new();
        for row in &self.rows {
            let key: Vec<Symbol> = idx.iter().map(|&i| row.values[i]).collect();
            match groups.get_mut(&key) {
                None => {
                    order.push(key.clone());
                    groups.insert(key, row.decision);
                }
                Some(d) => match policy {
                    MergePolicy::Earliest => {}
                    MergePolicy::Latest => *d = row.decision,
                    MergePolicy::Smallest => *d = (*d).min(row.decision),
                },
            }
        }
        let rows = order
            .into_iter()
            .map(|values| {
                let decision = groups[&values];
                Row { values, decision }
            })
            .collect();
        DecisionTable::new(
            self.alphabet.clone(),
            idx.iter().map(|&i| self.attributes[i].clone()).collect(),
            rows,
        )
    }

    /// Same rows, decisions replaced; `decisions[i]` goes to row `i`.
    pub fn relabel_decisions(&self, decisions: &[Decision]) -> Result<DecisionTable> {
        if decisions.len() != self.rows.len() {
            return Err(Error::DecisionMapLength {
                got: decisions.len(),
                expected: self.rows.len(),
            });
        }
        let mut out = self.clone();
        for (row, &d) in out.rows.iter_mut().zip(decisions) {
            row.decision = d;
        }
        Ok(out)
    }

    /// Whether `other` is a member of `[self]`: its attributes are a
    /// subsequence of ours and its tuple set is exactly our projection onto
    /// them. Decisions are ignored.
    pub fn closure_contains(&self, other: &DecisionTable) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut columns = Vec::with_capacity(other.dim());
        for name in &other.attributes {
            match self.attributes.iter().position(|a| a == name) {
                Some(i) if columns.last().is_none_or(|&last| i > last) => columns.push(i),
                _ => return Ok(false),
            }
        }
        let projected: BTreeSet<Vec<Symbol>> = self
            .rows
            .iter()
            .map(|r| columns.iter().map(|&i| r.values[i]).collect())
            .collect();
        let theirs: BTreeSet<Vec<Symbol>> = other.rows.iter().map(|r| r.values.clone()).collect();
        Ok(projected == theirs)
    }

    /// The `.dtab` text form.
    pub fn to_dtab(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet:");
        for s in self.alphabet.symbols() {
            out.push(' ');
            out.push_str(s);
        }
        out.push_str("\nattributes:");
        for a in &self.attributes {
            out.push(' ');
            out.push_str(a);
        }
        out.push('\n');
        for row in &self.rows {
            for &v in &row.values {
                out.push_str(self.alphabet.symbol(v));
                out.push(' ');
            }
            out.push_str("-> ");
            out.push_str(&row.decision.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_dtab(text: &str) -> Result<DecisionTable> {
        parse_dtab(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<DecisionTable> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}

impl FromStr for DecisionTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dtab(s)
    }
}

/// 1-based column of `token` inside `line`; `token` must be a subslice.
fn column_of(line: &str, token: &str) -> usize {
    token.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_dtab(text: &str) -> Result<DecisionTable> {
    let mut alphabet: Option<Alphabet> = None;
    let mut attributes: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    let mut row_lines = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if alphabet.is_none() {
            let rest = line
                .trim_start()
                .strip_prefix("alphabet:")
                .ok_or_else(|| Error::parse(line_no, 1, "expected `alphabet:` header"))?;
            let alpha = Alphabet::new(rest.split_whitespace())
                .map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
            alphabet = Some(alpha);
            continue;
        }
        if attributes.is_none() {
            let rest = line
                .trim_start()
                .strip_prefix("attributes:")
                .ok_or_else(|| Error::parse(line_no, 1, "expected `attributes:` header"))?;
            attributes = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let alpha = alphabet.as_ref().expect("set above");
        let dim = attributes.as_ref().expect("set above").len();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let arrow = tokens
            .iter()
            .position(|&t| t == "->")
            .ok_or_else(|| Error::parse(line_no, 1, "row is missing `->`"))?;
        if arrow != dim {
            return Err(Error::parse(
                line_no,
                1,
                format!("row has {arrow} values, expected {dim}"),
            ));
        }
        let mut values = Vec::with_capacity(dim);
        for &tok in &tokens[..arrow] {
            let v = alpha.index_of(tok).ok_or_else(|| {
                Error::parse(
                    line_no,
                    column_of(raw, tok),
                    format!("value `{tok}` is not in the alphabet"),
                )
            })?;
            values.push(v);
        }
        let decision = match &tokens[arrow + 1..] {
            [d] => d.parse::<Decision>().map_err(|_| {
                Error::parse(
                    line_no,
                    column_of(raw, d),
                    format!("malformed decision `{d}`: expected a nonnegative integer"),
                )
            })?,
            [] => return Err(Error::parse(line_no, raw.len() + 1, "missing decision")),
            [_, extra, ..] => {
                return Err(Error::parse(
                    line_no,
                    column_of(raw, extra),
                    "trailing tokens after decision",
                ))
            }
        };
        row_lines.push(line_no);
        rows.push(Row { values, decision });
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:` header"))?;
    let attributes =
        attributes.ok_or_else(|| Error::parse(1, 1, "missing `attributes:` header"))?;

    // Report duplicates against the line where the repeat occurs.
    let mut first_seen: HashMap<&[Symbol], usize> = HashMap::new();
    for (row, &line_no) in rows.iter().zip(&row_lines) {
        if let Some(prev) = first_seen.insert(&row.values, line_no) {
            return Err(Error::parse(
                line_no,
                1,
                format!("duplicate row (first seen on line {prev})"),
            ));
        }
    }
    DecisionTable::new(alphabet, attributes, rows).map_err(|e| Error::parse(2, 1, e.to_string()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    alphabet: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowJson {
    values: Vec<String>,
    decision: Decision,
}

impl From<DecisionTable> for TableJson {
    fn from(t: DecisionTable) -> Self {
        let rows = t
            .rows
            .iter()
            .map(|r| RowJson {
                values: r
                    .values
                    .iter()
                    .map(|&v| t.alphabet.symbol(v).to_string())
                    .collect(),
                decision: r.decision,
            })
            .collect();
        TableJson {
            alphabet: t.alphabet.symbols,
            attributes: t.attributes,
            rows,
        }
    }
}

impl TryFrom<TableJson> for DecisionTable {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<Self> {
        let alphabet = Alphabet::new(j.alphabet)?;
        let mut rows = Vec::with_capacity(j.rows.len());
        for (r, row) in j.rows.into_iter().enumerate() {
            let values = row
                .values
                .iter()
                .map(|tok| {
                    alphabet
                        .index_of(tok)
                        .ok_or_else(|| Error::ValueOutOfRange {
                            row: r,
                            value: u32::MAX,
                            k: alphabet.k(),
                        })
                })
                .collect::<Result<_>>()?;
            rows.push(Row {
                values,
                decision: row.decision,
            });
        }
        DecisionTable::new(alphabet, j.attributes, rows)
    }
}

/// Seeded random table with `rows` distinct tuples, columns `a1..adim`.
pub fn random_table(
    alphabet: &Alphabet,
    dim: usize,
    rows: usize,
    mode: &DecisionMode,
    seed: u64,
) -> Result<DecisionTable> {
    let k = alphabet.k() as u128;
    let capacity = u32::try_from(dim)
        .ok()
        .and_then(|d| k.checked_pow(d))
        .unwrap_or(u128::MAX);
    if rows as u128 > capacity {
        return Err(Error::TooManyRows {
            requested: rows as u128,
            capacity,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = alphabet.k();
    let patterns: Vec<Vec<Symbol>> = if capacity <= 1 << 16 && rows as u128 * 2 > capacity {
        // Dense request: shuffle the whole space.
        let mut all: Vec<Vec<Symbol>> = (0..capacity as usize)
            .map(|mut m| {
                let mut t = vec![0; dim];
                for slot in t.iter_mut().rev() {
                    *slot = (m % k) as Symbol;
                    m /= k;
                }
                t
            })
            .collect();
        all.shuffle(&mut rng);
        all.truncate(rows);
        all
    } else {
        let mut seen = HashSet::with_capacity(rows);
        let mut out = Vec::with_capacity(rows);
        while out.len() < rows {
            let t: Vec<Symbol> = (0..dim).map(|_| rng.gen_range(0..k) as Symbol).collect();
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        out
    };
    DecisionTable::from_patterns(
        alphabet.clone(),
        (1..=dim).map(|i| format!("a{i}")).collect(),
        patterns,
        mode,
        seed ^ 0x9e37_79b9_7f4a_7c15,
    )
}
