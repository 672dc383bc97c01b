//! Collective bosonized dynamics: many two-level batteries mapped onto one
//! bosonic mode, beam-splitter coupled to the cavity.
//!
//! At low excitation density the collective raising operator is sqrt(N) times
//! a bosonic creation operator, so the cavity-battery pair becomes a two-mode
//! beam splitter with coupling J_N = sqrt(N) J. The propagator factorizes
//! into three exponentials with closed-form gauge functions, and a coherent
//! drive state stays coherent: amplitudes sqrt(N) cos(J_N t) on the cavity
//! and -i sqrt(N) sin(J_N t) on the batteries. This module is the lossless
//! analytic reference; decay is handled by the exact Fock engine.

use crate::error::{Error, Result};
use crate::fitkit::{TimeGrid, TimeSeries};
use crate::linops::ComplexMatrix;
use crate::thermo;
use crate::C64;
use std::sync::atomic::{AtomicBool, Ordering};

/// Distance from the gauge singularity below which `wn_gauge` refuses to
/// evaluate.
const GAUGE_GUARD: f64 = 1e-6;

static HP_VALIDITY_WARNED: AtomicBool = AtomicBool::new(false);

/// Two-mode beam-splitter parameters after bosonization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    pub omega: f64,
    pub x1: C64,
    /// Collective coupling, sqrt(N) J.
    pub j_n: f64,
}

/// Bosonize N batteries coupled to the cavity with uniform strength `j`.
pub fn hp_hamiltonian(n_atoms: usize, omega: f64, x1: C64, j: f64) -> Result<BeamSplitter> {
    if n_atoms == 0 {
        return Err(Error::InvalidParams("need at least one battery".into()));
    }
    if j < 0.0 {
        return Err(Error::InvalidParams(format!(
            "coupling must be non-negative, got {j}"
        )));
    }
    Ok(BeamSplitter {
        omega,
        x1,
        j_n: (n_atoms as f64).sqrt() * j,
    })
}

/// Gauge functions of the factorized propagator
/// exp(g1 a b+) exp(g2 a+ b) exp(g3 (b+b - a+a)), zero at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiNormanGauge {
    pub g1: C64,
    pub g2: C64,
    pub g3: C64,
}

/// Closed-form gauge functions on the principal interval:
/// g1 = -i tan(J_N t), g2 = -(i/2) sin(2 J_N t), g3 = -ln cos(J_N t).
///
/// Within `GAUGE_GUARD` of the tangent singularity (J_N t = pi/2 mod pi) the
/// functions blow up and an explicit error points callers at
/// `coherent_evolution`, which stays regular there.
pub fn wn_gauge(j_n: f64, t: f64) -> Result<WeiNormanGauge> {
    let theta = j_n * t;
    let dist = (theta.rem_euclid(std::f64::consts::PI) - std::f64::consts::FRAC_PI_2).abs();
    if dist < GAUGE_GUARD {
        return Err(Error::SingularGauge { theta, dist });
    }
    let i = C64::new(0.0, 1.0);
    Ok(WeiNormanGauge {
        g1: -i * theta.tan(),
        g2: -i * 0.5 * (2.0 * theta).sin(),
        g3: -C64::new(theta.cos(), 0.0).ln(),
    })
}

/// Coherent amplitudes of the cavity and the collective battery mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPair {
    pub alpha_cavity: C64,
    pub beta_atoms: C64,
    pub n_atoms: usize,
}

impl CoherentPair {
    /// Mean battery excitation per atom, sin^2(J_N t). The bosonization is a
    /// low-density approximation; beyond 1/2 it is qualitative.
    pub fn excitation_fraction(&self) -> f64 {
        self.beta_atoms.norm_sqr() / self.n_atoms as f64
    }

    pub fn hp_validity_exceeded(&self) -> bool {
        self.excitation_fraction() > 0.5
    }
}

/// Beam-splitter evolution of the drive state sqrt(N) on the cavity, vacuum
/// on the batteries. Regular for all t, including the gauge singularity.
pub fn coherent_evolution(n_atoms: usize, j_n: f64, t: f64) -> CoherentPair {
    let root_n = (n_atoms as f64).sqrt();
    let theta = j_n * t;
    let pair = CoherentPair {
        alpha_cavity: C64::new(root_n * theta.cos(), 0.0),
        beta_atoms: C64::new(0.0, -root_n * theta.sin()),
        n_atoms,
    };
    if pair.hp_validity_exceeded() && !HP_VALIDITY_WARNED.swap(true, Ordering::Relaxed) {
        log::warn!(
            "collective mode past half excitation (fraction {:.3}); \
             the low-density bosonization is qualitative here",
            pair.excitation_fraction()
        );
    }
    pair
}

/// Fock truncation sized so a coherent state of mean number N carries less
/// than 1e-10 probability beyond it.
pub fn fock_truncation(n_atoms: usize) -> usize {
    10 + (n_atoms as f64 + 6.0 * (n_atoms as f64).sqrt()).ceil() as usize
}

/// Coherent-state amplitudes on a Fock ladder truncated at `n_max`.
pub fn coherent_state(alpha: C64, n_max: usize) -> Vec<C64> {
    let mut amps = Vec::with_capacity(n_max + 1);
    let mut a = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amps.push(a);
    for n in 1..=n_max {
        a = a * alpha / C64::new((n as f64).sqrt(), 0.0);
        amps.push(a);
    }
    amps
}

/// Lossless reference observables: battery energy Re(x1) |beta|^2 and the
/// ergotropy of the truncated coherent battery state against the collective
/// ladder Hamiltonian.
pub fn reference_series(
    n_atoms: usize,
    x1: C64,
    j: f64,
    grid: &TimeGrid,
) -> Result<(TimeSeries, TimeSeries)> {
    let bs = hp_hamiltonian(n_atoms, x1.re, x1, j)?;
    let n_max = fock_truncation(n_atoms);
    let levels: Vec<C64> = (0..=n_max).map(|k| C64::new(x1.re * k as f64, 0.0)).collect();
    let h_b = ComplexMatrix::diagonal(&levels);
    let times = grid.times();
    let mut energy = Vec::with_capacity(times.len());
    let mut work = Vec::with_capacity(times.len());
    for &t in &times {
        let pair = coherent_evolution(n_atoms, bs.j_n, t);
        let beta = coherent_state(pair.beta_atoms, n_max);
        let rho = ComplexMatrix::outer(&beta, &beta);
        let rep = thermo::ergotropy(&rho, &h_b)?;
        energy.push(rep.energy);
        work.push(rep.ergotropy);
    }
    Ok((
        TimeSeries::new(times.clone(), energy)?,
        TimeSeries::new(times, work)?,
    ))
}
