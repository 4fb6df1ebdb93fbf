use thiserror::Error;

/// Library-wide error type. Parse errors name the offending field; domain
/// errors carry enough context to be reported verbatim by a front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("structure is not valid: {0}")]
    Invalid(String),

    #[error("map is not an embedding: {0}")]
    NotEmbedding(String),

    #[error("not a substructure: {0}")]
    NotSubstructure(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("search budget exhausted after {0} steps")]
    Budget(u64),

    #[error("structure has a nontrivial automorphism; embedding counts and copy counts diverge")]
    NotRigid,

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("square root of {value} does not exist modulo {p}")]
    SqrtUnavailable { value: u64, p: u64 },

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("conversion from {from} to {to} is not implemented")]
    NoSuchConversion { from: String, to: String },

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code for front ends.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::ArityMismatch(_) => "arity_mismatch",
            Error::Invalid(_) => "invalid",
            Error::NotEmbedding(_) => "not_embedding",
            Error::NotSubstructure(_) => "not_substructure",
            Error::Capacity(_) => "capacity",
            Error::Budget(_) => "budget",
            Error::NotRigid => "not_rigid",
            Error::Unsupported(_) => "unsupported",
            Error::Inconsistent(_) => "inconsistent",
            Error::SqrtUnavailable { .. } => "sqrt_unavailable",
            Error::Degenerate(_) => "degenerate",
            Error::NoSuchConversion { .. } => "no_such_conversion",
            Error::Internal(_) => "internal",
        }
    }
}

pub(crate) fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse { field: field.to_string(), message: message.into() }
}
