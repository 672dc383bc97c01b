//! Closed-form dynamics of one effective two-level battery exchanging a
//! single excitation with a cavity mode.
//!
//! Within the sector spanned by (|n>|x1>, |n+1>|g>) the coupled system is a
//! 2x2 complex-symmetric block; its dressed pair, propagator, and reduced
//! battery state all have closed forms. The level energy x1 may be complex:
//! its imaginary part drains the norm, which is deliberately not restored.

use crate::eit::EffectiveBattery;
use crate::error::{Error, Result};
use crate::fitkit::{TimeGrid, TimeSeries};
use crate::linops::ComplexMatrix;
use crate::thermo;
use crate::C64;

/// One battery, one cavity mode, one shared excitation on top of `n` photons.
#[derive(Debug, Clone, Copy)]
pub struct JcParams {
    pub battery: EffectiveBattery,
    /// Cavity frequency.
    pub omega: f64,
    /// Atom-cavity coupling.
    pub j: f64,
    /// Photon sector index: the block couples |n>|x1> to |n+1>|g>.
    pub n: u32,
}

impl JcParams {
    pub fn new(battery: EffectiveBattery, omega: f64, j: f64, n: u32) -> Result<Self> {
        if j < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling must be non-negative, got {j}"
            )));
        }
        Ok(Self {
            battery,
            omega,
            j,
            n,
        })
    }

    /// The 2x2 sector block in the basis (|n>|x1>, |n+1>|g>).
    pub fn block(&self) -> ComplexMatrix {
        let x1 = self.battery.x1;
        let nw = self.n as f64 * self.omega;
        let jc = C64::new(self.j, 0.0);
        ComplexMatrix::from_entries(
            2,
            vec![
                x1 + C64::new(nw, 0.0),
                jc,
                jc,
                C64::new(nw + self.omega, 0.0),
            ],
        )
        .expect("2x2 entries")
    }
}

/// Dressed eigenpair of the sector block with the amplitude columns of both
/// eigenstates.
#[derive(Debug, Clone, Copy)]
pub struct DressedPair {
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub c_plus: C64,
    pub c_minus: C64,
    pub d_plus: C64,
    pub d_minus: C64,
}

/// Dressed energies lambda_n(+-) = (x1 +- sqrt(4 J^2 + (omega - x1)^2))/2
/// + (n + 1/2) omega, on the principal branch of the complex square root.
pub fn dressed_pair(p: &JcParams) -> DressedPair {
    let x1 = p.battery.x1;
    let w = C64::new(p.omega, 0.0);
    let delta = w - x1;
    let disc = C64::new(4.0 * p.j * p.j, 0.0) + delta * delta;
    // The principal branch is safe as long as the discriminant stays off the
    // negative real axis; that only fails deep in the overdamped regime
    // (gamma > 2J on resonance), far outside this model's domain.
    assert!(
        disc.re > 0.0 || disc.im != 0.0,
        "dressed-pair discriminant {disc} on the square-root branch cut"
    );
    let root = disc.sqrt();
    let offset = C64::new((p.n as f64 + 0.5) * p.omega, 0.0);
    let lambda_plus = 0.5 * (x1 + root) + offset;
    let lambda_minus = 0.5 * (x1 - root) + offset;

    let nw = C64::new(p.n as f64 * p.omega, 0.0);
    let jc = C64::new(p.j, 0.0);
    let column = |lambda: C64| -> (C64, C64) {
        let rel = x1 + nw - lambda;
        let norm = (rel * rel + jc * jc).sqrt();
        if norm.norm() < 1e-300 {
            // Decoupled limit where this branch is the bare battery state.
            (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
        } else {
            (jc / norm, -rel / norm)
        }
    };
    let (c_plus, d_plus) = column(lambda_plus);
    let (c_minus, d_minus) = column(lambda_minus);
    DressedPair {
        lambda_plus,
        lambda_minus,
        c_plus,
        c_minus,
        d_plus,
        d_minus,
    }
}

/// Propagate an initial superposition alpha |n>|x1> + beta |n+1>|g> for a
/// time t. Norm decays when Im(x1) < 0; it is not restored.
pub fn evolve_pure(p: &JcParams, alpha: C64, beta: C64, t: f64) -> [C64; 2] {
    if p.j == 0.0 {
        // Decoupled: two bare phases.
        let x1 = p.battery.x1;
        let nw = p.n as f64 * p.omega;
        let pa = (C64::new(0.0, -t) * (x1 + C64::new(nw, 0.0))).exp();
        let pb = (C64::new(0.0, -t) * C64::new(nw + p.omega, 0.0)).exp();
        return [alpha * pa, beta * pb];
    }
    let dp = dressed_pair(p);
    let u = propagator(&dp, t);
    [
        u[0][0] * alpha + u[0][1] * beta,
        u[1][0] * alpha + u[1][1] * beta,
    ]
}

/// As `evolve_pure`, but renormalized to unit norm. Sensitivity studies only;
/// the raw decaying amplitudes carry the physics everywhere else.
pub fn evolve_pure_renormalized(p: &JcParams, alpha: C64, beta: C64, t: f64) -> [C64; 2] {
    let [a, b] = evolve_pure(p, alpha, beta, t);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm > 0.0 {
        [a / norm, b / norm]
    } else {
        [a, b]
    }
}

/// Sector propagator assembled from the dressed pair: P diag(phases) P^-1
/// with P the column matrix of dressed amplitudes.
fn propagator(dp: &DressedPair, t: f64) -> [[C64; 2]; 2] {
    let ep = (C64::new(0.0, -t) * dp.lambda_plus).exp();
    let em = (C64::new(0.0, -t) * dp.lambda_minus).exp();
    let det = dp.c_plus * dp.d_minus - dp.c_minus * dp.d_plus;
    let inv_det = C64::new(1.0, 0.0) / det;
    // U = P D P^-1 expanded.
    let u00 = (dp.c_plus * ep * dp.d_minus - dp.c_minus * em * dp.d_plus) * inv_det;
    let u01 = (-dp.c_plus * ep * dp.c_minus + dp.c_minus * em * dp.c_plus) * inv_det;
    let u10 = (dp.d_plus * ep * dp.d_minus - dp.d_minus * em * dp.d_plus) * inv_det;
    let u11 = (-dp.d_plus * ep * dp.c_minus + dp.d_minus * em * dp.c_plus) * inv_det;
    [[u00, u01], [u10, u11]]
}

/// Battery reduced density matrix at time t, diagonal in (excited, ground):
/// the cavity factors of the two basis states are orthogonal, so the cross
/// terms trace out exactly.
pub fn reduced_density(p: &JcParams, alpha: C64, beta: C64, t: f64) -> ComplexMatrix {
    let [a, b] = evolve_pure(p, alpha, beta, t);
    ComplexMatrix::diagonal(&[C64::new(a.norm_sqr(), 0.0), C64::new(b.norm_sqr(), 0.0)])
}

/// Battery Hamiltonian in the (excited, ground) basis.
pub fn battery_hamiltonian(p: &JcParams) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[C64::new(p.battery.energy(), 0.0), C64::new(0.0, 0.0)])
}

/// Energy E(t) = Re(x1) <x1|rho|x1> and ergotropy W(t) over a uniform grid.
pub fn energy_and_ergotropy_series(
    p: &JcParams,
    alpha: C64,
    beta: C64,
    grid: &TimeGrid,
) -> Result<(TimeSeries, TimeSeries)> {
    let h_b = battery_hamiltonian(p);
    let times = grid.times();
    let mut energy = Vec::with_capacity(times.len());
    let mut work = Vec::with_capacity(times.len());
    for &t in &times {
        let rho = reduced_density(p, alpha, beta, t);
        let rep = thermo::ergotropy(&rho, &h_b)?;
        energy.push(rep.energy);
        work.push(rep.ergotropy);
    }
    Ok((
        TimeSeries::new(times.clone(), energy)?,
        TimeSeries::new(times, work)?,
    ))
}

/// Occupation probabilities (P_excited, P_ground) over a uniform grid.
pub fn probability_series(
    p: &JcParams,
    alpha: C64,
    beta: C64,
    grid: &TimeGrid,
) -> Result<(TimeSeries, TimeSeries)> {
    let times = grid.times();
    let mut pe = Vec::with_capacity(times.len());
    let mut pg = Vec::with_capacity(times.len());
    for &t in &times {
        let [a, b] = evolve_pure(p, alpha, beta, t);
        pe.push(a.norm_sqr());
        pg.push(b.norm_sqr());
    }
    Ok((
        TimeSeries::new(times.clone(), pe)?,
        TimeSeries::new(times, pg)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eit::{effective_battery, EitParams};
    use crate::linops::{eig_general, expm, partial_trace, Factor};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn charging_params() -> EitParams {
        EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap()
    }

    #[test]
    fn decoupled_limit_eigenvalues() {
        let battery = EffectiveBattery::from_level(c(0.7, 0.0));
        let p = JcParams::new(battery, 1.0, 0.0, 2).unwrap();
        let dp = dressed_pair(&p);
        // omega > x1: plus branch is the photon-like level.
        assert!((dp.lambda_plus - c(3.0, 0.0)).norm() < 1e-12); // (n+1) omega
        assert!((dp.lambda_minus - c(0.7 + 2.0, 0.0)).norm() < 1e-12); // x1 + n omega
    }

    #[test]
    fn resonant_splitting() {
        let battery = EffectiveBattery::from_level(c(1.0, 0.0));
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let dp = dressed_pair(&p);
        assert!((dp.lambda_plus - c(1.5, 0.0)).norm() < 1e-12);
        assert!((dp.lambda_minus - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dressed_pair_matches_block_eigensolve() {
        let battery = effective_battery(&charging_params(), true).unwrap();
        let p = JcParams::new(battery, 1.0, 0.5, 1).unwrap();
        let dp = dressed_pair(&p);
        let sys = eig_general(&p.block()).unwrap();
        let mut got = [dp.lambda_minus, dp.lambda_plus];
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (g, e) in got.iter().zip(&sys.values) {
            assert!((g - e).norm() < 1e-10, "dressed {g} vs eig {e}");
        }
        // Trace identity.
        let tr = dp.lambda_plus + dp.lambda_minus;
        let expect = battery.x1 + c(3.0 * p.omega, 0.0);
        assert!((tr - expect).norm() < 1e-12);
    }

    #[test]
    fn lossless_columns_unit_norm() {
        let battery = EffectiveBattery::from_level(c(0.9, 0.0));
        let p = JcParams::new(battery, 1.0, 0.4, 0).unwrap();
        let dp = dressed_pair(&p);
        for (cc, dd) in [(dp.c_plus, dp.d_plus), (dp.c_minus, dp.d_minus)] {
            assert!((cc.norm_sqr() + dd.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn evolve_identity_at_t0() {
        let battery = effective_battery(&charging_params(), true).unwrap();
        let p = JcParams::new(battery, 1.0, 0.5, 1).unwrap();
        let (alpha, beta) = (c(0.6, 0.2), c(0.5, -0.59160797830996));
        let [a, b] = evolve_pure(&p, alpha, beta, 0.0);
        assert!((a - alpha).norm() < 1e-12);
        assert!((b - beta).norm() < 1e-12);
    }

    #[test]
    fn resonant_rabi_flop() {
        let battery = EffectiveBattery::from_level(c(1.0, 0.0));
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        for k in 0..40 {
            let t = k as f64 * 0.37;
            let [a, _] = evolve_pure(&p, c(1.0, 0.0), c(0.0, 0.0), t);
            let expect = (p.j * t).cos().powi(2);
            assert!(
                (a.norm_sqr() - expect).abs() < 1e-10,
                "t={t}: {} vs {expect}",
                a.norm_sqr()
            );
        }
    }

    #[test]
    fn probability_complementarity_lossless() {
        let battery = EffectiveBattery::from_level(c(0.95, 0.0));
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let grid = TimeGrid::new(60.0, 600).unwrap();
        let (pe, pg) = probability_series(&p, c(1.0, 0.0), c(0.0, 0.0), &grid).unwrap();
        for (a, b) in pe.y().iter().zip(pg.y()) {
            assert!((a + b - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn evolution_matches_exponential_of_block() {
        let battery = effective_battery(&charging_params(), true).unwrap();
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let (alpha, beta) = (c(0.8, 0.0), c(0.0, 0.6));
        for t in [0.3, 1.7, 9.2, 40.0] {
            let u = expm(&p.block(), c(0.0, -t)).unwrap();
            let expect = [
                u[(0, 0)] * alpha + u[(0, 1)] * beta,
                u[(1, 0)] * alpha + u[(1, 1)] * beta,
            ];
            let got = evolve_pure(&p, alpha, beta, t);
            for (g, e) in got.iter().zip(&expect) {
                assert!((g - e).norm() < 1e-9, "t={t}");
            }
        }
    }

    #[test]
    fn reduced_density_matches_partial_trace_oracle() {
        // Embed the sector state into cavity (x) battery and trace the cavity.
        let battery = effective_battery(&charging_params(), true).unwrap();
        let p = JcParams::new(battery, 1.0, 0.5, 1).unwrap();
        let (alpha, beta) = (c(0.7, 0.1), c(-0.2, 0.67082039));
        let n = p.n as usize;
        for t in [0.0, 2.3, 17.0] {
            let [a, b] = evolve_pure(&p, alpha, beta, t);
            let dim_cav = n + 2;
            let mut psi = vec![c(0.0, 0.0); dim_cav * 2];
            psi[n * 2] = a; // |n>|excited>
            psi[(n + 1) * 2 + 1] = b; // |n+1>|ground>
            let rho_full = ComplexMatrix::outer(&psi, &psi);
            let oracle = partial_trace(&rho_full, (dim_cav, 2), Factor::B).unwrap();
            let got = reduced_density(&p, alpha, beta, t);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((got[(i, j)] - oracle[(i, j)]).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn reduced_density_initial_and_lossless_trace() {
        let battery = EffectiveBattery::from_level(c(1.0, 0.0));
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let rho0 = reduced_density(&p, c(1.0, 0.0), c(0.0, 0.0), 0.0);
        assert!((rho0[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(rho0[(1, 1)].norm() < 1e-12);
        for t in [0.5, 3.0, 12.0] {
            let rho = reduced_density(&p, c(1.0, 0.0), c(0.0, 0.0), t);
            assert!((rho.trace().re - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lossy_norm_envelope_nonincreasing() {
        let battery = effective_battery(&charging_params(), false).unwrap(); // gamma = 0.05
        let p = JcParams::new(battery, 1.0, 0.5, 0).unwrap();
        let grid = TimeGrid::new(100.0, 2000).unwrap();
        let (pe, pg) = probability_series(&p, c(1.0, 0.0), c(0.0, 0.0), &grid).unwrap();
        let total: Vec<f64> = pe.y().iter().zip(pg.y()).map(|(a, b)| a + b).collect();
        // Local maxima of the total norm must not increase.
        let mut last_peak = f64::INFINITY;
        for i in 1..total.len() - 1 {
            if total[i] > total[i - 1] && total[i] > total[i + 1] {
                assert!(total[i] <= last_peak + 1e-12);
                last_peak = total[i];
            }
        }
    }

    #[test]
    fn vanishing_decay_limit_is_continuous() {
        let lossless = EffectiveBattery::from_level(c(0.9926, 0.0));
        let slightly = EffectiveBattery::from_level(c(0.9926, -1e-8));
        let p0 = JcParams::new(lossless, 1.0, 0.5, 0).unwrap();
        let p1 = JcParams::new(slightly, 1.0, 0.5, 0).unwrap();
        let mut worst = 0.0f64;
        for k in 0..=200 {
            let t = k as f64 * 0.5; // up to t = 100
            let a0 = evolve_pure(&p0, c(1.0, 0.0), c(0.0, 0.0), t);
            let a1 = evolve_pure(&p1, c(1.0, 0.0), c(0.0, 0.0), t);
            worst = worst.max((a0[0] - a1[0]).norm()).max((a0[1] - a1[1]).norm());
        }
        assert!(worst < 1e-5, "worst deviation {worst}");
    }

    #[test]
    fn work_peaks_at_full_inversion() {
        let battery = EffectiveBattery::from_level(c(0.9926, 0.0));
        let p = JcParams::new(battery, 0.9926, 0.5, 0).unwrap();
        let grid = TimeGrid::new(50.0, 5000).unwrap();
        let (_, w) = energy_and_ergotropy_series(&p, c(1.0, 0.0), c(0.0, 0.0), &grid).unwrap();
        let max_w = w.max_y();
        assert!((max_w - battery.energy()).abs() < 1e-4);
        for y in w.y() {
            assert!(*y >= -1e-12 && *y <= battery.energy() + 1e-9);
        }
    }
}
