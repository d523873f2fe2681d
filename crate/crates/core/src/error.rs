use thiserror::Error;

/// Errors produced anywhere in the estimation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    DegenerateAlphabet(usize),

    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: expected size {expected}, got {actual}")]
    AlphabetMismatch { expected: usize, actual: usize },

    #[error("context has {got} symbols, tree depth is {depth}")]
    ContextTooShort { got: usize, depth: usize },

    #[error("sequence of length {len} is too short (needs more than {needed})")]
    SequenceTooShort { len: usize, needed: usize },

    #[error("invalid probability vector: {0}")]
    InvalidPmf(String),

    #[error("every log-probability is log 0")]
    AllZeroMass,

    #[error("conditioning symbol {0} has zero marginal mass")]
    ZeroMarginal(usize),

    #[error("parameter {name} = {value} outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("value {value} at position {index} must be positive")]
    NonPositiveValue { index: usize, value: f64 },

    #[error("enumeration of {count} joint sequences exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("line {line}: {message}")]
    MalformedRow { line: usize, message: String },

    #[error("duplicate date {date} with conflicting values {first} and {second}")]
    ConflictingDuplicate { date: String, first: f64, second: f64 },

    #[error("series share no common dates")]
    EmptyIntersection,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
