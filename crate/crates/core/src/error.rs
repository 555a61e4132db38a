use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An enumeration would exceed the configured size limit.
    #[error("budget exceeded: {what} needs length {needed}, limit is {limit}")]
    Budget {
        what: String,
        needed: usize,
        limit: usize,
    },
    /// A computation produced something that exact arithmetic says cannot
    /// happen (non-integral coefficient, failed exact division, ...).
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}
