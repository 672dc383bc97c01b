//! Analytic single-excitation dynamics of N identical two-level batteries
//! sharing one photon.
//!
//! With uniform coupling only two modes matter: the photon amplitude c0 and
//! the symmetric atomic amplitude (all c_j equal). The coupled pair has
//! effective coupling sqrt(N) J and is solved in closed form through its two
//! complex poles.

use crate::error::{Error, Result};
use crate::fitkit::{TimeGrid, TimeSeries};
use crate::linops::ComplexMatrix;
use crate::C64;

/// Photon amplitude and the N (identical) atomic amplitudes at a time t.
#[derive(Debug, Clone)]
pub struct SingleExcitationState {
    pub c0: C64,
    pub c: Vec<C64>,
    pub t: f64,
}

impl SingleExcitationState {
    /// |c0|^2 + sum_j |c_j|^2; equals one while the batteries are lossless.
    pub fn total_probability(&self) -> f64 {
        self.c0.norm_sqr() + self.c.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Sum of the atomic populations.
    pub fn atomic_population(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// The two poles of the coupled (photon, symmetric-atom) pair:
/// s(+-) = -i [(omega + x1) +- sqrt((omega - x1)^2 + 4 N J^2)] / 2.
fn poles(n_atoms: usize, omega: f64, x1: C64, j: f64) -> (C64, C64) {
    let w = C64::new(omega, 0.0);
    let delta = w - x1;
    let disc = delta * delta + C64::new(4.0 * n_atoms as f64 * j * j, 0.0);
    let root = disc.sqrt();
    let half_i = C64::new(0.0, -0.5);
    (half_i * (w + x1 + root), half_i * (w + x1 - root))
}

/// Closed-form amplitudes at time t starting from c0(0) = 1, c_j(0) = 0.
pub fn amplitudes(n_atoms: usize, omega: f64, x1: C64, j: f64, t: f64) -> Result<SingleExcitationState> {
    if n_atoms == 0 {
        return Err(Error::InvalidParams("need at least one battery".into()));
    }
    if j < 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling must be non-negative, got {j}"
        )));
    }
    let (sp, sm) = poles(n_atoms, omega, x1, j);
    let gap = sp - sm;
    let i = C64::new(0.0, 1.0);
    let (c0, cj) = if gap.norm() < 1e-12 {
        // Confluent double pole: c0_tilde has numerator -i(i s - x1), giving
        // e^{st}(1 - i(i s0 - x1) t); the atomic residue picks up a bare t.
        let s0 = sm;
        let e = (s0 * t).exp();
        let c0 = e * (C64::new(1.0, 0.0) + (-i) * (i * s0 - x1) * t);
        let cj = -i * C64::new(j, 0.0) * t * e;
        (c0, cj)
    } else {
        // Partial fractions of c0_tilde = -i(i s - x1)/((s - s+)(s - s-)) and
        // cj_tilde = -iJ/((s - s+)(s - s-)); signs fixed by c0(0) = 1.
        let a_plus = -i * (i * sp - x1) / gap;
        let a_minus = i * (i * sm - x1) / gap;
        let b_plus = -i * C64::new(j, 0.0) / gap;
        let b_minus = -b_plus;
        let ep = (sp * t).exp();
        let em = (sm * t).exp();
        (a_plus * ep + a_minus * em, b_plus * ep + b_minus * em)
    };
    Ok(SingleExcitationState {
        c0,
        c: vec![cj; n_atoms],
        t,
    })
}

/// Battery energy E(t) = Re(x1) * sum_j |c_j(t)|^2 over a uniform grid.
pub fn battery_energy(
    n_atoms: usize,
    omega: f64,
    x1: C64,
    j: f64,
    grid: &TimeGrid,
) -> Result<TimeSeries> {
    let times = grid.times();
    let mut e = Vec::with_capacity(times.len());
    for &t in &times {
        let state = amplitudes(n_atoms, omega, x1, j, t)?;
        e.push(x1.re * state.atomic_population());
    }
    TimeSeries::new(times, e)
}

/// Reduced atomic density matrix on span{all-ground, one-excited_j}:
/// rho[0][0] = |c0|^2, rho[j][k] = c_j c_k* (j, k >= 1), photon-sector cross
/// terms vanish under the cavity trace.
pub fn reduced_density_n(state: &SingleExcitationState) -> ComplexMatrix {
    let n = state.c.len();
    let mut rho = ComplexMatrix::zeros(n + 1);
    rho[(0, 0)] = C64::new(state.c0.norm_sqr(), 0.0);
    for jj in 0..n {
        for kk in 0..n {
            rho[(jj + 1, kk + 1)] = state.c[jj] * state.c[kk].conj();
        }
    }
    rho
}

/// Battery Hamiltonian on the same basis: diag(0, Re x1, ..., Re x1).
pub fn battery_hamiltonian_n(n_atoms: usize, x1: C64) -> ComplexMatrix {
    let mut levels = vec![C64::new(x1.re, 0.0); n_atoms + 1];
    levels[0] = C64::new(0.0, 0.0);
    ComplexMatrix::diagonal(&levels)
}
