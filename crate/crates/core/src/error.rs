use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EkqError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("truncation order {0} is not supported: associator coefficients beyond h^2 are not modeled; supply them explicitly to go further")]
    Order(usize),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree bound exceeded: {0}")]
    Bound(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch at {path}: {msg}")]
    Arity { path: String, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, EkqError>;
