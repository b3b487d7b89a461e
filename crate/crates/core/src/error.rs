use thiserror::Error;

/// Errors raised by the numerical routines and the state constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature failed to reach its tolerance.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A state or configuration violates one of its invariants.
    #[error("invalid state: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
