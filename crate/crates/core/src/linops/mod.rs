//! Minimal dense complex linear algebra: eigendecompositions of small
//! matrices, the matrix exponential, and the partial trace. All operations
//! are pure functions on immutable inputs.

mod eig;
mod expm;
mod matrix;

pub use eig::{eig_general, eig_general_with, eig_hermitian, eig_hermitian_with, EigenSystem};
pub use expm::{expm, expm_with};
pub use matrix::{vec_inner, vec_norm, vec_normalize, ComplexMatrix};

use crate::error::{Error, Result};

/// Numeric tolerances used across the linear-algebra layer. The defaults are
/// what every public entry point uses; construct a custom record only for
/// sensitivity studies.
#[derive(Debug, Clone)]
pub struct NumericPolicy {
    /// Relative Hermiticity defect accepted by the Hermitian solver.
    pub hermitian_tol: f64,
    /// Residual bound for Hermitian eigenpairs, relative to |A|.
    pub hermitian_residual: f64,
    /// Residual bound for general eigenpairs, relative to |A|.
    pub general_residual: f64,
    /// Two eigenvalues closer than this (relative) count as degenerate.
    pub degeneracy_tol: f64,
    /// Minimum independent component tolerated inside a degenerate cluster
    /// before the matrix is declared defective.
    pub defective_overlap: f64,
    /// Largest |scale * A| norm accepted by the matrix exponential.
    pub expm_norm_limit: f64,
    /// Trace-preservation tolerance for the partial trace.
    pub trace_tol: f64,
    pub max_dim_eig: usize,
    pub max_dim_expm: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            hermitian_tol: 1e-12,
            hermitian_residual: 1e-12,
            general_residual: 1e-9,
            degeneracy_tol: 1e-9,
            defective_overlap: 1e-6,
            expm_norm_limit: 700.0,
            trace_tol: 1e-12,
            max_dim_eig: 64,
            max_dim_expm: 4096,
        }
    }
}

/// Which tensor factor `partial_trace` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    A,
    B,
}

/// Trace out one factor of a bipartite density matrix on C^dA (x) C^dB,
/// row index a * dB + b. The trace is preserved exactly up to rounding.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: (usize, usize),
    keep: Factor,
) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if da * db != rho.dim() {
        return Err(Error::Dimension(format!(
            "partial trace expects dim {} * {} = {}, matrix has {}",
            da,
            db,
            da * db,
            rho.dim()
        )));
    }
    let out = match keep {
        Factor::A => ComplexMatrix::from_fn(da, |a, a2| {
            (0..db).map(|b| rho[(a * db + b, a2 * db + b)]).sum()
        }),
        Factor::B => ComplexMatrix::from_fn(db, |b, b2| {
            (0..da).map(|a| rho[(a * db + b, a * db + b2)]).sum()
        }),
    };
    Ok(out)
}
