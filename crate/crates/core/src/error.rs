use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("column height must be non-negative, got {0}")]
    NegativeHeight(i64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("the zero ideal has no finite staircase")]
    ZeroIdeal,

    #[error("ideal is not zero-dimensional (infinite staircase)")]
    NotZeroDimensional,

    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(String, String),

    #[error("supports not disjoint: expected colength {expected}, got {actual}")]
    SupportsNotDisjoint { expected: usize, actual: usize },

    #[error("limit does not exist in H^{expected}: candidate limit has colength {actual}")]
    LimitDoesNotExist { expected: usize, actual: usize },

    #[error("torus parameter must be nonzero")]
    ZeroTorusParameter,

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("sampling failed for target {target} after {attempts} attempts")]
    SamplingFailure { target: String, attempts: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
