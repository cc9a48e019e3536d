use thiserror::Error;

use crate::formula::FormulaError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("undeclared value `{0}`")]
    UndeclaredValue(String),
    #[error("duplicate value `{0}`")]
    DuplicateValue(String),
    #[error("argument `{0}` has no value label")]
    MissingValue(String),
    #[error("argument `{0}` has no claim")]
    MissingClaim(String),
    #[error("no argument claims `{0}`")]
    ClaimNotFound(String),
    #[error("mixed labelling: {0}")]
    MixedLabelling(String),
    #[error("enumeration cap exceeded: {what} is {size}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("unsupported framework shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid value order: {0}")]
    InvalidOrder(String),
    #[error("invalid principle `{0}`")]
    InvalidPrinciple(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("line {line}: {message}")]
    Document { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
