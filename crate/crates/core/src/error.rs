use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid harmonic label {0}")]
    InvalidLabel(String),

    #[error("superspin 2j = {j2} exceeds truncation q = {q}")]
    Truncation { j2: u32, q: u32 },

    #[error("cannot embed level {from} into smaller level {to}")]
    Embedding { from: u32, to: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("derivations do not close under the bracket (residual {0:e})")]
    NotClosed(f64),

    #[error("wrong number of arguments: form of degree {degree} evaluated on {given}")]
    Arity { degree: usize, given: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
