use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(String, String),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
}
