//! Crate-wide error type.
//!
//! Verification failures (nonzero residuals) are *results*, not errors; the
//! variants here cover genuine misuse or numeric breakdown.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller violated a precondition (bad range, wrong regime index).
    #[error("usage error: {0}")]
    Usage(String),

    /// Parameter combination the numeric path deliberately does not cover.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// A series or iteration failed to converge within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A result was produced but its accuracy diagnostics missed the target.
    #[error("accuracy below target: {0}")]
    Accuracy(String),

    /// Internal shape violation (malformed profile, inconsistent exponents).
    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
