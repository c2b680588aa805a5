use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid-doubling-weight: {0}")]
    InvalidDoublingWeight(String),
    #[error("invalid-input: {0}")]
    InvalidInput(String),
    #[error("incompatible-quiver")]
    IncompatibleQuiver,
    #[error("index-out-of-range: {0}")]
    IndexOutOfRange(String),
    #[error("arity-overflow: tensors have arity at most 3")]
    ArityOverflow,
    #[error("size-mismatch: {0}")]
    SizeMismatch(String),
    #[error("unknown-arrow: {0}")]
    UnknownArrow(String),
    #[error("invalid-polyvector-degree: expected 2, found {0}")]
    InvalidPolyvectorDegree(String),
    #[error("invalid-quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid-arrow-weight: {0}")]
    InvalidArrowWeight(String),
    #[error("invalid-context: {0}")]
    InvalidContext(String),
    #[error("invalid-weight: {0}")]
    InvalidWeight(String),
    #[error("invalid-form-degree: {0}")]
    InvalidFormDegree(String),
    #[error("not-composable: {0}")]
    NotComposable(String),
    #[error("ill-typed-table: {0}")]
    IllTypedTable(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
