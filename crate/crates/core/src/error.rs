use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedField(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a squarefree integer other than 0 and 1")]
    NotSquarefree(i64),
    #[error("{0}")]
    InvalidInput(String),
    #[error("characteristic polynomial has a repeated root")]
    RepeatedRoot,
    #[error("unsupported recurrence order {0}: exact root data unavailable")]
    UnsupportedOrder(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("tuple of {0} entries exceeds the subsum certificate limit of 20")]
    TupleTooLarge(usize),
    #[error("{0} bases exceed the partition analysis limit of 8")]
    TooManyIndices(usize),
    #[error("unknown remark id {0:?}")]
    UnknownRemark(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
