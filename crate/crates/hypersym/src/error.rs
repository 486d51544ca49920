use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate form: radical dimension {0}")]
    Degenerate(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not classifiable: {0}")]
    NotClassifiable(String),
    #[error("matched pair conditions fail ({0} violations)")]
    MatchedPair(usize),
    #[error("integrability fails: {0}")]
    Integrability(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
