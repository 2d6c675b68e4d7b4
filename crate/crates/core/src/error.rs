use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("representation mismatch: {form} at {point} evaluated to {value}")]
    ReprMismatch {
        form: String,
        point: String,
        value: f64,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("size {n} exceeds the cap of {cap}")]
    Capacity { n: usize, cap: usize },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
