use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A dense computation would exceed the configured size guard.
    #[error("capacity exceeded: {what} needs n = {n}, limit is {limit} (set ANDLIFT_CAPACITY to override)")]
    Capacity { what: &'static str, n: usize, limit: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("function is not boolean-valued")]
    NotBoolean,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("disjointification failed after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },

    /// A post-hoc certificate check failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
