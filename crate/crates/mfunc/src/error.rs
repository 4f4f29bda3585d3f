//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A range or limit argument was below its documented minimum.
    #[error("empty or invalid range: {0}")]
    EmptyRange(String),

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Cusp-form eigenvalue requested for a prime missing from the table.
    #[error("no eigenvalue available for p = {p}")]
    MissingEigenvalue { p: u64 },

    /// A configured resource cap (memory, series length) would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The logarithm fast path was called outside its validity regime.
    #[error("local factor outside log regime: mu = {mu:.6} >= 0.25 (use the direct quadrature path)")]
    Regime { mu: f64 },

    /// The Euler-product tail bound exceeds the requested tolerance.
    #[error(
        "prime cutoff {cutoff} too small: tail bound {bound:.3e} > tolerance {tol:.3e}; \
         cutoff of at least {required} needed"
    )]
    CutoffTooSmall {
        cutoff: u64,
        bound: f64,
        tol: f64,
        required: u64,
    },

    /// Two grids that must share axes do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Characteristic-function mass at the grid boundary is large enough that
    /// inversion would alias.
    #[error("refusing inversion: |m| = {boundary_max:.3e} at the grid boundary (>= {limit:.1e})")]
    AliasingRisk { boundary_max: f64, limit: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed grid file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
