use thiserror::Error;

/// Failure modes shared across the toolkit.
///
/// Arithmetic is checked: anything that would exceed `i64` is reported as
/// `Overflow` rather than wrapping. Truncation preconditions are enforced at
/// entry so dimension arithmetic never silently reads past the data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("insufficient truncation: operation needs level {needed}, value has {have}")]
    InsufficientTruncation { needed: usize, have: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("shape mismatch: {0}")]
    Mismatch(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
