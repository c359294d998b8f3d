use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet needs at least 2 symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("duplicate alphabet symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid token `{0}`: tokens must be nonempty, contain no whitespace, and not be `->` or contain `#`")]
    InvalidToken(String),
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("row {row} has {got} values, table dimension is {expected}")]
    RowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("row {row}: value index {value} outside alphabet of size {k}")]
    ValueOutOfRange { row: usize, value: u32, k: usize },
    #[error("duplicate row tuple ({0})")]
    DuplicateRow(String),
    #[error("column index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("decision map has {got} entries for {expected} rows")]
    DecisionMapLength { got: usize, expected: usize },
    #[error("tables are over different alphabets")]
    AlphabetMismatch,
    #[error("{requested} rows requested but only {capacity} distinct tuples exist")]
    TooManyRows { requested: u128, capacity: u128 },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{what} is {got}, above the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("pattern length {got} does not match {expected}")]
    PatternLength { got: usize, expected: usize },
    #[error("ragged patterns: expected length {expected}, found {got}")]
    RaggedPatterns { expected: usize, got: usize },
    #[error("degenerate line `{0}`: a and b are both zero")]
    DegenerateLine(String),
    #[error("zero polynomial `{0}` not allowed here")]
    ZeroPolynomial(String),
    #[error("sample point references {0}")]
    BadSamplePoint(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid decision mode `{0}`")]
    DecisionMode(String),
    #[error("class descriptor: {0}")]
    Class(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
