use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} exceptional coefficients, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("curve `{name}` violates its role: {reason}")]
    InvalidCurve { name: String, reason: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid surface file: {0}")]
    Schema(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("unknown fixture `{0}` (expected `inoue` or `dp1`)")]
    UnknownFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
