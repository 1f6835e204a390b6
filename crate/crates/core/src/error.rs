use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value or index passed to an operation is out of range or inconsistent.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Structural validation of an instance failed.
    #[error("invalid instance: {0}")]
    Validation(String),

    /// The seat graph is outside the class an algorithm is defined for.
    #[error("seat graph outside the required class: {0}")]
    GraphClass(String),

    /// The preference profile lacks a property an algorithm requires.
    #[error("preference profile outside the required class: {0}")]
    ProfileClass(String),

    /// Predicted work exceeds the configured limit; nothing was computed.
    #[error("budget exceeded: {what} needs {needed} units, limit is {limit}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
