//! Crate-wide error type. Domain errors carry the violated hypothesis so CLI
//! users see why a computation was refused, not just that it was.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// An input lies outside the hypotheses of the identity being evaluated,
    /// e.g. a degenerate charge for which the generic multiplicity table fails.
    #[error("domain error: {0}")]
    Domain(String),

    /// A linear system expected to be non-singular was singular (or vice versa).
    #[error("singularity error: {0}")]
    Singular(String),

    /// Matrix/vector shape mismatch.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Division by zero in an exact field.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Power series arithmetic requested beyond the tracked truncation order.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Malformed external data (lattice file, JSON payload, ...).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub fn domain(msg: impl Into<String>) -> Self {
        CoreError::Domain(msg.into())
    }
    pub fn singular(msg: impl Into<String>) -> Self {
        CoreError::Singular(msg.into())
    }
}
