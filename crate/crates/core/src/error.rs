use thiserror::Error;

/// Errors raised by the algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reduction did not terminate within {cap} steps")]
    StepCapExceeded { cap: usize },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
