use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, KrylovError>;

#[derive(Debug, Error)]
pub enum KrylovError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix exponential overflows (norm {norm:e})")]
    Overflow { norm: f64 },

    /// An iteration hit its cap; `best` carries the last available estimate.
    #[error("{what} did not converge within {iterations} iterations (best estimate {best:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        best: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("dense evaluation of a {n}x{n} non-diagonal matrix exceeds the cap of {cap}; use a smaller instance")]
    SizeCap { n: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl KrylovError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        KrylovError::InvalidInput(msg.into())
    }
}
