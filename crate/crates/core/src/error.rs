//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by basis construction, field expansion, operator
/// factorization and the time integrators.
#[derive(Debug, Error)]
pub enum Error {
    /// Basis cardinality (m+K)!/(m!K!) does not fit the platform's `usize`.
    #[error("basis cardinality overflow: m = {m}, max degree = {max_degree}")]
    BasisOverflow { m: usize, max_degree: usize },

    /// Mismatched vector/grid dimensions.
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    /// Covariance operator has too much negative spectrum to be treated as
    /// positive semi-definite.
    #[error("indefinite covariance kernel: {negative_count} eigenvalues below -{tol:.3e} (m = {m})")]
    IndefiniteKernel {
        negative_count: usize,
        m: usize,
        tol: f64,
    },

    /// A factorization hit a zero (or numerically zero) pivot.
    #[error("singular matrix in {context}: zero pivot at row {row}")]
    SingularMatrix { context: &'static str, row: usize },

    /// Dense matrix-function evaluation requested above the size threshold.
    #[error("grid too large for dense matrix functions: N = {n} exceeds limit {limit}")]
    DenseSizeLimit { n: usize, limit: usize },

    /// Invalid solver or experiment configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
