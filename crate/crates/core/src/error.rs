use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad labels, mismatched vertex sets,
    /// unsorted exponent lists, ...).
    #[error("input error: {0}")]
    Input(String),
    /// A search exceeded one of its configured caps. Never reported as a
    /// partial answer.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A representation or realizer failed its exact check.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Malformed JSON artifact.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
