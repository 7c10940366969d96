use thiserror::Error;

pub type Result<T, E = CdoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdoError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error("invalid bounds for `{name}`: {lo} > {hi}")]
    InvalidBounds { name: String, lo: String, hi: String },

    #[error("ballot of voter {voter} violates the rationality constraints")]
    Irrational { voter: usize },

    #[error("the feasible set is empty")]
    Infeasible,

    #[error("enumeration refused: {items} items exceeds the cap of {cap}; use the branch-and-bound solver")]
    EnumerationCap { items: usize, cap: usize },

    #[error("integer overflow in weight arithmetic")]
    Overflow,

    #[error("solver deadline exceeded")]
    Timeout,

    #[error("{0}")]
    Invalid(String),

    #[error("unsupported format `{0}` (expected `cdo/1`)")]
    Format(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl CdoError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CdoError::Invalid(msg.into())
    }
}

impl From<serde_json::Error> for CdoError {
    fn from(e: serde_json::Error) -> Self {
        CdoError::Parse(e.to_string())
    }
}

impl From<csv::Error> for CdoError {
    fn from(e: csv::Error) -> Self {
        CdoError::Parse(e.to_string())
    }
}
