use thiserror::Error;

/// Errors raised by constructors and analyses in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("arity error: expected {expected} subspaces, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("point ({a}, {b}, {c}) lies outside the region Omega")]
    Region { a: f64, b: f64, c: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("missing scalar-sum certificate: {0}")]
    Certificate(String),

    #[error("not an orthogonal projection: {0}")]
    NotProjection(String),

    #[error("classification failed: {0}")]
    Classification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Dimension(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
