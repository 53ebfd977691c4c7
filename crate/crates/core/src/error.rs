use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed call: wrong lengths, indices out of range, mismatched fields.
    #[error("usage error: {0}")]
    Usage(String),
    /// Arithmetic outside the domain of an operation (e.g. inverting zero).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    /// A configured ceiling would be exceeded.
    #[error("resource limit exceeded: {what} needs {needed}, ceiling is {limit}")]
    Resource {
        what: &'static str,
        needed: String,
        limit: String,
    },
    /// The input does not describe a code of the expected shape.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn resource(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Resource {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
