//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^H| = {defect:.3e} exceeds {tol:.3e} of max-norm")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("defective matrix: {0}")]
    Defective(String),

    #[error("matrix exponential rejected: |scale * A| = {norm:.3e} would overflow")]
    NormOverflow { norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("density matrix eigenvalue {value:.3e} below the PSD tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error(
        "gauge functions singular at J_N*t = {theta:.6} ({dist:.2e} from pi/2 mod pi); \
         the coherent-state solution stays regular there"
    )]
    SingularGauge { theta: f64, dist: f64 },

    #[error("insufficient oscillation: {found} usable peaks, need at least {need}")]
    InsufficientOscillation { found: usize, need: usize },

    #[error("non-positive peak value {value:.3e} at t = {t:.6}; cannot fit a log-linear envelope")]
    NonPositivePeak { t: f64, value: f64 },

    #[error("time step {h:.4e} exceeds the stability bound {bound:.4e}")]
    StepSize { h: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
