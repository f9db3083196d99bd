use thiserror::Error;

/// Errors produced by the algebra and geometry layers.
#[derive(Debug, Error)]
pub enum MathError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bidegree mismatch: expected ({0},{1})")]
    BidegreeMismatch(usize, usize),
    #[error("form is not pure of a single bidegree")]
    NotPure,
    #[error("coframe index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("dimension {0} exceeds the supported maximum 32")]
    DimensionTooLarge(usize),
    #[error("presentation fails d\u{b2} = 0 on generator {0}")]
    JacobiFailure(usize),
    #[error("operation requires an integrable complex structure")]
    NotIntegrable,
    #[error("metric is not Hermitian positive definite: {0}")]
    InvalidMetric(String),
    #[error("power {0} out of range 1..={1}")]
    PowerOutOfRange(usize, usize),
    #[error("catalog entry `{0}`: {1}")]
    ConstraintViolation(String, String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("certificate is malformed: {0}")]
    MalformedCertificate(String),
}

/// Parse errors carry a 1-based line and column.
#[derive(Debug, Error)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
