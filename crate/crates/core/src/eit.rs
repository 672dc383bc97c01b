//! Driven three-level system with a lossy lower level: exact and perturbative
//! eigenstructure, dark-state identification, and the effective two-level
//! battery it yields.
//!
//! Basis ordering is (|d>, |e>, |m>) throughout: |d> carries the decay kappa,
//! |e> is the intermediate level, |m> the target level. Two classical drives
//! with Rabi frequencies Omega1 (d <-> e) and Omega2 (m <-> e) open the
//! transparency window; the long-lived superposition of |d> and |m> becomes
//! the battery's excited level.

use crate::error::{Error, Result};
use crate::linops::{eig_general, ComplexMatrix};
use crate::C64;

/// Physical inputs of the three-level model, all in units of the reference
/// frequency. `omega_c` is derived: omega_a = omega_b + omega_c always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EitParams {
    pub omega_d: f64,
    pub omega_e: f64,
    pub omega_m: f64,
    /// Rabi frequency of the d <-> e drive.
    pub rabi1: f64,
    /// Rabi frequency of the m <-> e drive.
    pub rabi2: f64,
    pub omega_a: f64,
    pub omega_b: f64,
    /// Decay rate attached to |d>.
    pub kappa: f64,
}

impl EitParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        omega_d: f64,
        omega_e: f64,
        omega_m: f64,
        rabi1: f64,
        rabi2: f64,
        omega_a: f64,
        omega_b: f64,
        kappa: f64,
    ) -> Result<Self> {
        if rabi1 < 0.0 || rabi2 < 0.0 {
            return Err(Error::InvalidParams(format!(
                "Rabi frequencies must be non-negative, got ({rabi1}, {rabi2})"
            )));
        }
        if kappa < 0.0 {
            return Err(Error::InvalidParams(format!(
                "decay rate must be non-negative, got {kappa}"
            )));
        }
        Ok(Self {
            omega_d,
            omega_e,
            omega_m,
            rabi1,
            rabi2,
            omega_a,
            omega_b,
            kappa,
        })
    }

    /// Derived drive frequency, omega_a - omega_b.
    pub fn omega_c(&self) -> f64 {
        self.omega_a - self.omega_b
    }

    /// Quadrature Rabi sum Omega^2 = Omega1^2 + Omega2^2.
    pub fn rabi_sq(&self) -> f64 {
        self.rabi1 * self.rabi1 + self.rabi2 * self.rabi2
    }

    /// Complex detuning of |e> in the rotating frame, with the decay folded in.
    pub fn w1(&self) -> C64 {
        C64::new(self.omega_e + self.omega_a - self.omega_d, self.kappa)
    }

    /// Complex detuning of |m> in the rotating frame.
    pub fn w2(&self) -> C64 {
        C64::new(self.omega_m + self.omega_c() - self.omega_d, self.kappa)
    }

    /// Constant shift between the rotating-frame matrix and the physical
    /// frame: the full eigenvalues are x' = x + (omega_d - i kappa).
    pub fn shift(&self) -> C64 {
        C64::new(self.omega_d, -self.kappa)
    }
}

/// Three eigenvalues and eigenstates of the driven system (basis d, e, m),
/// shifted to the physical frame, with the dark state singled out.
#[derive(Debug, Clone)]
pub struct EitSpectrum {
    pub x: [C64; 3],
    pub states: [[C64; 3]; 3],
    pub dark_index: usize,
    /// Set when two eigenvalues fall within the degeneracy tolerance and the
    /// dark state was picked by intermediate-level weight instead.
    pub degenerate: bool,
}

impl EitSpectrum {
    pub fn dark_value(&self) -> C64 {
        self.x[self.dark_index]
    }

    pub fn dark_state(&self) -> [C64; 3] {
        self.states[self.dark_index]
    }
}

/// The reduced two-level battery: ground state plus one long-lived excited
/// level with complex energy `x1`.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveBattery {
    /// Complex level energy; Re is the stored energy quantum, -Im the
    /// amplitude decay rate.
    pub x1: C64,
    /// Composition of the excited level in the (d, e, m) basis.
    pub state: [C64; 3],
}

impl EffectiveBattery {
    /// Battery level energy, Re(x1).
    pub fn energy(&self) -> f64 {
        self.x1.re
    }

    /// Amplitude decay rate, -Im(x1). Non-negative for physical inputs.
    pub fn gamma(&self) -> f64 {
        -self.x1.im
    }

    /// A bare two-level battery with the given complex level energy.
    pub fn from_level(x1: C64) -> Self {
        Self {
            x1,
            state: [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        }
    }
}

/// Rotating-frame matrix of the driven three-level system with the level
/// reference moved to |d>:
///
/// ```text
///   [ 0        Omega1   0      ]
///   [ Omega1   w1       Omega2 ]
///   [ 0        Omega2   w2     ]
/// ```
pub fn build_h0(p: &EitParams) -> ComplexMatrix {
    let zero = C64::new(0.0, 0.0);
    let r1 = C64::new(p.rabi1, 0.0);
    let r2 = C64::new(p.rabi2, 0.0);
    ComplexMatrix::from_entries(3, vec![zero, r1, zero, r1, p.w1(), r2, zero, r2, p.w2()])
        .expect("3x3 entries")
}

/// Exact spectrum: eigensolve of the rotating-frame matrix, shifted back by
/// (omega_d - i kappa). The dark state is the eigenvalue with the smallest
/// |Im|; on degeneracy, the state with the least intermediate-level weight.
pub fn spectrum_exact(p: &EitParams) -> Result<EitSpectrum> {
    let sys = eig_general(&build_h0(p))?;
    let shift = p.shift();
    let x: Vec<C64> = sys.values.iter().map(|v| v + shift).collect();
    let states: Vec<[C64; 3]> = sys.vectors.iter().map(|v| [v[0], v[1], v[2]]).collect();
    Ok(select_dark(&x, &states))
}

/// First-order closed-form spectrum. Valid when the rotating-frame detunings
/// are small against the quadrature Rabi sum; a ratio above 0.2 logs a
/// warning. Rejects Omega = 0, where the expansion is undefined.
pub fn spectrum_perturbative(p: &EitParams) -> Result<EitSpectrum> {
    let rabi_sq = p.rabi_sq();
    if rabi_sq <= 0.0 {
        return Err(Error::InvalidParams(
            "perturbative spectrum undefined at Omega = 0".into(),
        ));
    }
    let rabi = rabi_sq.sqrt();
    let w1 = p.w1();
    let w2 = p.w2();
    let ratio = w1.norm().max(w2.norm()) / rabi;
    if ratio > 0.2 {
        log::warn!(
            "perturbative spectrum outside its regime: max(|w1|, |w2|)/Omega = {ratio:.3} > 0.2"
        );
    }

    let r1sq = p.rabi1 * p.rabi1;
    let r2sq = p.rabi2 * p.rabi2;
    // Rotating-frame eigenvalues to first order in the detunings.
    let x1 = w2 * (r1sq / rabi_sq);
    let bright = 0.5 * (w1 + w2 * (r2sq / rabi_sq));
    let x2 = C64::new(rabi, 0.0) + bright;
    let x3 = C64::new(-rabi, 0.0) + bright;

    let shift = p.shift();
    let xs = [x1 + shift, x2 + shift, x3 + shift];
    let states = [
        first_order_state(p, x1),
        first_order_state(p, x2),
        first_order_state(p, x3),
    ];

    // Deterministic (re, im) ordering, matching the exact path.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| {
        xs[i]
            .re
            .total_cmp(&xs[j].re)
            .then(xs[i].im.total_cmp(&xs[j].im))
    });
    let x: Vec<C64> = order.iter().map(|&i| xs[i]).collect();
    let states: Vec<[C64; 3]> = order.iter().map(|&i| states[i]).collect();
    Ok(select_dark(&x, &states))
}

/// First-order eigenstate for a rotating-frame eigenvalue x, normalized with
/// complex-modulus squares (the eigenvalues carry an imaginary part).
fn first_order_state(p: &EitParams, x: C64) -> [C64; 3] {
    let w1 = p.w1();
    let w2 = p.w2();
    let r1 = C64::new(p.rabi1, 0.0);
    let r2sq = C64::new(p.rabi2 * p.rabi2, 0.0);
    let d = (x - w1) * (x - w2) - r2sq;
    let e = r1 * (x - w2);
    let m = r1 * C64::new(p.rabi2, 0.0);
    let norm = (d.norm_sqr() + e.norm_sqr() + m.norm_sqr()).sqrt();
    if norm == 0.0 {
        return [C64::new(0.0, 0.0); 3];
    }
    [d / norm, e / norm, m / norm]
}

fn select_dark(x: &[C64], states: &[[C64; 3]]) -> EitSpectrum {
    let dark_by_im = (0..3)
        .min_by(|&i, &j| x[i].im.abs().total_cmp(&x[j].im.abs()))
        .unwrap();
    // Degenerate |Im| (all zero when kappa = 0): fall back to the least
    // intermediate-level weight, which is what makes a state dark.
    let near: Vec<usize> = (0..3)
        .filter(|&i| (x[i].im.abs() - x[dark_by_im].im.abs()).abs() <= 1e-9)
        .collect();
    let (dark_index, degenerate) = if near.len() > 1 {
        let idx = near
            .into_iter()
            .min_by(|&i, &j| states[i][1].norm().total_cmp(&states[j][1].norm()))
            .unwrap();
        (idx, true)
    } else {
        (dark_by_im, false)
    };
    EitSpectrum {
        x: [x[0], x[1], x[2]],
        states: [states[0], states[1], states[2]],
        dark_index,
        degenerate,
    }
}

/// The battery the rest of the crate consumes. With the transparency drives
/// on, the excited level is the dark state from the exact spectrum; without
/// them it is the bare |e> level with the full decay.
pub fn effective_battery(p: &EitParams, with_eit: bool) -> Result<EffectiveBattery> {
    if with_eit {
        let spec = spectrum_exact(p)?;
        Ok(EffectiveBattery {
            x1: spec.dark_value(),
            state: spec.dark_state(),
        })
    } else {
        Ok(EffectiveBattery::from_level(C64::new(p.omega_e, -p.kappa)))
    }
}

/// Sweep the first drive frequency at fixed omega_b and report
/// (omega_c, battery energy) pairs from the exact spectrum.
pub fn sweep_omega_c(p: &EitParams, omega_a_values: &[f64]) -> Result<Vec<(f64, f64)>> {
    omega_a_values
        .iter()
        .map(|&omega_a| {
            let pt = EitParams { omega_a, ..*p };
            let battery = effective_battery(&pt, true)?;
            Ok((pt.omega_c(), battery.energy()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single-atom parameter set used across the charging studies:
    /// strong d-drive, weak m-drive, 5% bare decay.
    fn charging_params() -> EitParams {
        EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap()
    }

    #[test]
    fn h0_decoupled_is_diagonal() {
        let p = EitParams::new(0.25, 1.0, 0.5, 0.0, 0.0, 1.0, 0.5, 0.05).unwrap();
        let h = build_h0(&p);
        assert_eq!(h[(0, 0)], C64::new(0.0, 0.0));
        assert_eq!(h[(1, 1)], p.w1());
        assert_eq!(h[(2, 2)], p.w2());
        assert_eq!(h[(0, 1)], C64::new(0.0, 0.0));
        assert_eq!(h[(1, 2)], C64::new(0.0, 0.0));
    }

    #[test]
    fn h0_charging_params_structure() {
        let p = charging_params();
        let h = build_h0(&p);
        assert_eq!(h[(0, 1)], C64::new(50.0, 0.0));
        assert_eq!(h[(1, 2)], C64::new(5.0, 0.0));
        assert!((p.rabi_sq() - 2525.0).abs() < 1e-12);
        assert_eq!(h[(1, 1)], C64::new(1.0 + 1.0 - 0.25, 0.05));
        assert_eq!(h[(2, 2)], C64::new(0.5 + 0.5 - 0.25, 0.05));
    }

    #[test]
    fn symmetric_drives_balance_dark_composition() {
        // Equal Rabi frequencies put the dark state at (|m> - |d>)/sqrt(2)
        // up to first-order corrections.
        let p = EitParams::new(0.0, 0.02, 0.01, 10.0, 10.0, 0.02, 0.01, 0.0).unwrap();
        let spec = spectrum_perturbative(&p).unwrap();
        let dark = spec.dark_state();
        assert!(dark[1].norm() < 1e-2);
        assert!((dark[0].norm() - dark[2].norm()).abs() < 1e-2);
        assert!(((dark[0] / dark[2]).re + 1.0).abs() < 5e-2);
    }

    #[test]
    fn decoupled_target_level_survives_exactly() {
        // No m-drive, no decay: |m> is an exact eigenstate at omega_m + omega_c.
        let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 0.0, 1.0, 0.5, 0.0).unwrap();
        let spec = spectrum_exact(&p).unwrap();
        let expect = p.omega_m + p.omega_c();
        let idx = (0..3)
            .min_by(|&i, &j| {
                (spec.x[i].re - expect)
                    .abs()
                    .total_cmp(&(spec.x[j].re - expect).abs())
            })
            .unwrap();
        assert!((spec.x[idx] - C64::new(expect, 0.0)).norm() < 1e-10);
        let st = spec.states[idx];
        assert!(st[0].norm() < 1e-10);
        assert!(st[1].norm() < 1e-10);
        assert!((st[2].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dark_state_decay_matches_suppressed_rate() {
        // Exact Im(x1') within 5% of the first-order rate Omega2^2 kappa / Omega^2.
        let p = charging_params();
        let spec = spectrum_exact(&p).unwrap();
        let expect = -p.rabi2 * p.rabi2 * p.kappa / p.rabi_sq(); // -4.9505e-4
        let got = spec.dark_value().im;
        assert!(
            (got - expect).abs() < 0.05 * expect.abs(),
            "got {got:.6e}, expected {expect:.6e}"
        );
    }

    #[test]
    fn dark_state_energy_near_first_order_value() {
        let p = charging_params();
        let spec = spectrum_exact(&p).unwrap();
        let r1sq = p.rabi1 * p.rabi1;
        let expect = r1sq / p.rabi_sq() * (p.omega_m + p.omega_c() - p.omega_d) + p.omega_d;
        assert!((expect - 0.992574).abs() < 1e-5);
        assert!((spec.dark_value().re - expect).abs() < 1e-3);
    }

    #[test]
    fn perturbative_tracks_exact_within_percent() {
        let p = charging_params();
        let exact = spectrum_exact(&p).unwrap();
        let pert = spectrum_perturbative(&p).unwrap();
        for (e, q) in exact.x.iter().zip(&pert.x) {
            assert!(
                (e - q).norm() <= 0.01 * e.norm().max(1e-3),
                "exact {e}, perturbative {q}"
            );
        }
        // Bright-state splitting: 2 Omega.
        let split = (pert.x[2] - pert.x[0]).norm();
        assert!((split - 2.0 * p.rabi_sq().sqrt()).abs() < 1e-9);
    }

    #[test]
    fn perturbative_rejects_zero_drive() {
        let p = EitParams::new(0.25, 1.0, 0.5, 0.0, 0.0, 1.0, 0.5, 0.05).unwrap();
        assert!(matches!(
            spectrum_perturbative(&p),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn no_drive_battery_keeps_full_decay() {
        let p = charging_params();
        let bare = effective_battery(&p, false).unwrap();
        assert!((bare.gamma() - 0.05).abs() < 1e-15);
        assert!((bare.energy() - 1.0).abs() < 1e-15);
        let dressed = effective_battery(&p, true).unwrap();
        let expect = p.rabi2 * p.rabi2 * p.kappa / p.rabi_sq();
        assert!((dressed.gamma() - expect).abs() < 0.05 * expect);
    }

    #[test]
    fn lossless_battery_has_zero_gamma() {
        let p = EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.0).unwrap();
        for with in [true, false] {
            let b = effective_battery(&p, with).unwrap();
            assert!(b.gamma().abs() < 1e-12, "gamma {} for with={with}", b.gamma());
        }
    }

    #[test]
    fn dark_state_orthogonal_to_intermediate_level() {
        let p = charging_params();
        let spec = spectrum_exact(&p).unwrap();
        let e_weight = spec.dark_state()[1].norm_sqr();
        let bound = (p.w2().norm() / p.rabi_sq().sqrt()).powi(2) + 1e-8;
        assert!(e_weight <= bound, "weight {e_weight:.3e} > bound {bound:.3e}");
    }

    #[test]
    fn eigenvalue_sum_equals_trace() {
        let p = charging_params();
        let h = build_h0(&p);
        let sys = eig_general(&h).unwrap();
        let sum: C64 = sys.values.iter().sum();
        let expect = p.w1() + p.w2();
        assert!((sum - expect).norm() < 1e-10);
    }

    #[test]
    fn sweep_slope_matches_composition_weight() {
        let p = charging_params();
        // Finite difference of the energy against omega_c.
        let delta = 0.01;
        let pts = sweep_omega_c(&p, &[1.0, 1.0 + delta]).unwrap();
        let slope = (pts[1].1 - pts[0].1) / delta;
        let expect = p.rabi1 * p.rabi1 / p.rabi_sq();
        assert!((expect - 0.990099).abs() < 1e-5);
        assert!((slope - expect).abs() < 1e-3, "slope {slope}, expect {expect}");
        assert!(pts[1].1 > pts[0].1);
    }

    #[test]
    fn suppression_ratio_across_random_sweep() {
        // gamma(with) / gamma(without) = Omega2^2 / Omega^2 within 5% whenever
        // the strong drive dominates.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut uniform = move |lo: f64, hi: f64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            lo + (hi - lo) * ((state >> 11) as f64 / (1u64 << 53) as f64)
        };
        for _ in 0..100 {
            let rabi2 = uniform(2.0, 8.0);
            let rabi1 = rabi2 * uniform(5.0, 20.0);
            let p = EitParams::new(
                uniform(0.0, 0.6),
                uniform(0.2, 1.0),
                uniform(0.0, 0.8),
                rabi1,
                rabi2,
                uniform(0.2, 1.0),
                uniform(0.0, 0.5),
                uniform(0.01, 0.2),
            )
            .unwrap();
            let with = effective_battery(&p, true).unwrap().gamma();
            let without = effective_battery(&p, false).unwrap().gamma();
            let ratio = with / without;
            let expect = p.rabi2 * p.rabi2 / p.rabi_sq();
            assert!(
                (ratio - expect).abs() <= 0.05 * expect,
                "ratio {ratio:.5e} vs {expect:.5e} at {p:?}"
            );
        }
    }
}
