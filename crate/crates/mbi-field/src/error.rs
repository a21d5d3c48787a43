//! Errors raised by the grid solver, snapshot I/O and diagnostics.

use mbi_core::MbiError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    /// A pointwise failure such as a degenerate state, carried up from the algebra layer.
    #[error(transparent)]
    Core(#[from] MbiError),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FieldError>;
