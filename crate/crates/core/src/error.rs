use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps each variant to a distinct exit status, so keep the split
/// between input problems, validation failures, exhausted budgets and
/// internal cross-check failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
