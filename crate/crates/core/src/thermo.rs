//! Ergotropy and passive-state energies.
//!
//! The maximum work a unitary can extract from a state rho with Hamiltonian H
//! is W = Tr[rho H] - Tr[rho_passive H], where the passive state pairs the
//! eigenvalues of rho, sorted descending, with the eigenvalues of H sorted
//! ascending. Sub-unit traces (from norm-decaying evolution) are kept as-is:
//! the sort-and-pair construction is applied to the raw eigenvalues.

use crate::error::{Error, Result};
use crate::linops::{eig_hermitian, ComplexMatrix};
use crate::C64;

/// Eigenvalues of rho below this are rejected; values in [-PSD_CLAMP, 0) are
/// treated as rounding noise and clamped to zero.
const PSD_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErgotropyReport {
    /// Tr[rho H].
    pub energy: f64,
    /// Passive-state energy, sum of paired eigenvalues.
    pub passive_energy: f64,
    /// energy - passive_energy, exactly.
    pub ergotropy: f64,
}

/// Ergotropy of `rho_b` against the battery Hamiltonian `h_b`. Both must be
/// Hermitian; `rho_b` must be positive semidefinite up to rounding, but its
/// trace may be below one.
pub fn ergotropy(rho_b: &ComplexMatrix, h_b: &ComplexMatrix) -> Result<ErgotropyReport> {
    let rho_sys = eig_hermitian(rho_b)?;
    let h_sys = eig_hermitian(h_b)?;

    let mut occupations: Vec<f64> = Vec::with_capacity(rho_sys.values.len());
    for v in &rho_sys.values {
        let r = v.re;
        if r < -PSD_CLAMP {
            return Err(Error::NegativeEigenvalue { value: r });
        }
        occupations.push(r.max(0.0));
    }
    // Descending occupations against ascending levels; the Hermitian solver
    // already returns levels ascending. Stable sort keeps degenerate blocks
    // in a fixed order (any pairing inside a block gives the same sum).
    occupations.sort_by(|a, b| b.total_cmp(a));
    let levels: Vec<f64> = h_sys.values.iter().map(|v| v.re).collect();

    let passive_energy: f64 = occupations
        .iter()
        .zip(&levels)
        .map(|(r, e)| r * e)
        .sum();
    let energy = trace_product(rho_b, h_b);
    Ok(ErgotropyReport {
        energy,
        passive_energy,
        ergotropy: energy - passive_energy,
    })
}

/// Ergotropy of a two-battery state written in the collective pair basis
/// {ground, antisymmetric, symmetric, doubly-excited}, whose level energies
/// are (0, e1 - v, e1 + v, 2 e1).
pub fn ergotropy_dicke(rho_b: &ComplexMatrix, e1: f64, v: f64) -> Result<ErgotropyReport> {
    if rho_b.dim() != 4 {
        return Err(Error::Dimension(format!(
            "pair-basis ergotropy expects a 4x4 state, got {}",
            rho_b.dim()
        )));
    }
    let h_b = ComplexMatrix::diagonal(&[
        C64::new(0.0, 0.0),
        C64::new(e1 - v, 0.0),
        C64::new(e1 + v, 0.0),
        C64::new(2.0 * e1, 0.0),
    ]);
    ergotropy(rho_b, &h_b)
}

/// Variant that renormalizes rho to unit trace before the pairing; for
/// sensitivity studies only, the raw form is the default everywhere.
pub fn ergotropy_normalized(rho_b: &ComplexMatrix, h_b: &ComplexMatrix) -> Result<ErgotropyReport> {
    let tr = rho_b.trace().re;
    if tr <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "cannot renormalize a state with trace {tr:.3e}"
        )));
    }
    let scaled = rho_b.scale(C64::new(1.0 / tr, 0.0));
    ergotropy(&scaled, h_b)
}

/// Re Tr(a b) for Hermitian factors.
fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc.re
}
