use thiserror::Error;

/// Errors raised by the algebra routines and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates a mathematical precondition (zero divisor, wrong
    /// shape, defective form, wrong summand type, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A type-1e transformation has no orthogonal square root.
    #[error("no square root: {0}")]
    NoSquareRoot(String),
    /// A constructive search finished without producing a witness.
    #[error("witness not found: {0}")]
    WitnessNotFound(String),
    /// An enumeration would exceed its element budget.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An invariant that the theory guarantees did not hold.
    #[error("internal error: {0}")]
    Internal(String),
    /// Malformed JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
