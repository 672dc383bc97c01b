//! Exact numerics on a truncated Fock space: cavity mode times N two-level
//! batteries (full product basis or the permutation-symmetric ladder),
//! dipole-dipole coupling, matrix-exponential propagation, and fixed-step
//! integration of Gaussian-pulse drives.

use crate::error::{Error, Result};
use crate::fitkit::{TimeGrid, TimeSeries};
use crate::linops::{expm, ComplexMatrix};
use crate::thermo;
use crate::C64;

const DIM_LIMIT: usize = 4096;
/// Population of the top two Fock levels above this triggers a truncation
/// warning.
const LEAK_WARN: f64 = 1e-6;

/// Atomic basis choice. The symmetric ladder is valid only for uniform
/// couplings, which is all this model has; it spans the |D_{N,k}> states that
/// a common cavity mode actually addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    FullTensor,
    SymmetricDicke,
}

/// Cavity (truncated at n_max) + N batteries with level x1, cavity coupling
/// j, and excitation-exchange strength v between every battery pair.
#[derive(Debug, Clone, Copy)]
pub struct SystemSpec {
    pub n_atoms: usize,
    pub n_max: usize,
    pub omega: f64,
    pub x1: C64,
    pub j: f64,
    pub v: f64,
    pub basis: BasisKind,
}

impl SystemSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::InvalidParams("need at least one battery".into()));
        }
        if self.j < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling must be non-negative, got {}",
                self.j
            )));
        }
        if self.basis == BasisKind::FullTensor && self.n_atoms > 12 {
            return Err(Error::InvalidParams(format!(
                "full product basis limited to 12 batteries, got {}",
                self.n_atoms
            )));
        }
        let dim = self.dim();
        if dim > DIM_LIMIT {
            let suggested = DIM_LIMIT / self.atom_dim() - 1;
            return Err(Error::Dimension(format!(
                "state space {dim} exceeds {DIM_LIMIT}; reduce n_max to at most {suggested}"
            )));
        }
        Ok(())
    }

    pub fn cavity_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn atom_dim(&self) -> usize {
        match self.basis {
            BasisKind::FullTensor => 1 << self.n_atoms,
            BasisKind::SymmetricDicke => self.n_atoms + 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.cavity_dim() * self.atom_dim()
    }

    fn index(&self, cav: usize, atom: usize) -> usize {
        cav * self.atom_dim() + atom
    }

    /// Number of excited batteries in an atomic basis state.
    fn excitations(&self, atom: usize) -> usize {
        match self.basis {
            BasisKind::FullTensor => atom.count_ones() as usize,
            BasisKind::SymmetricDicke => atom,
        }
    }
}

/// Symmetric-ladder coupling strength <D_{k+1}| sum sigma+ |D_k>.
fn ladder_coupling(n_atoms: usize, k: usize) -> f64 {
    (((k + 1) * (n_atoms - k)) as f64).sqrt()
}

/// Assemble the full (generally non-Hermitian) system matrix:
/// omega a+a + sum_i x1 n_i + v sum_{i != j} sigma_i+ sigma_j- +
/// j sum_i (a sigma_i+ + a+ sigma_i-).
pub fn build_hamiltonian(spec: &SystemSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let mut h = ComplexMatrix::zeros(spec.dim());
    let ad = spec.atom_dim();
    let cd = spec.cavity_dim();
    for cav in 0..cd {
        for at in 0..ad {
            let row = spec.index(cav, at);
            let k = spec.excitations(at) as f64;
            h[(row, row)] =
                C64::new(spec.omega * cav as f64, 0.0) + spec.x1 * k + C64::new(exchange_diag(spec, at), 0.0);
        }
    }
    add_exchange_offdiag(spec, &mut h);
    add_cavity_coupling(spec, &mut h);
    Ok(h)
}

/// Diagonal part of the pair-exchange term. In the symmetric ladder the
/// exchange operator acts as k(N - k) on |D_{N,k}>; in the product basis it
/// is purely off-diagonal.
fn exchange_diag(spec: &SystemSpec, atom: usize) -> f64 {
    match spec.basis {
        BasisKind::FullTensor => 0.0,
        BasisKind::SymmetricDicke => {
            let k = atom as f64;
            spec.v * k * (spec.n_atoms as f64 - k)
        }
    }
}

fn add_exchange_offdiag(spec: &SystemSpec, h: &mut ComplexMatrix) {
    if spec.basis != BasisKind::FullTensor || spec.v == 0.0 {
        return;
    }
    let ad = spec.atom_dim();
    let v = C64::new(spec.v, 0.0);
    for cav in 0..spec.cavity_dim() {
        for at in 0..ad {
            for src in 0..spec.n_atoms {
                if at & (1 << src) == 0 {
                    continue;
                }
                for dst in 0..spec.n_atoms {
                    if dst == src || at & (1 << dst) != 0 {
                        continue;
                    }
                    let to = (at & !(1 << src)) | (1 << dst);
                    let row = spec.index(cav, to);
                    let col = spec.index(cav, at);
                    h[(row, col)] += v;
                }
            }
        }
    }
}

fn add_cavity_coupling(spec: &SystemSpec, h: &mut ComplexMatrix) {
    if spec.j == 0.0 {
        return;
    }
    for cav in 1..spec.cavity_dim() {
        let photon = (cav as f64).sqrt();
        match spec.basis {
            BasisKind::FullTensor => {
                for at in 0..spec.atom_dim() {
                    for i in 0..spec.n_atoms {
                        if at & (1 << i) != 0 {
                            continue;
                        }
                        let amp = C64::new(spec.j * photon, 0.0);
                        let row = spec.index(cav - 1, at | (1 << i));
                        let col = spec.index(cav, at);
                        h[(row, col)] += amp; // a sigma+
                        h[(col, row)] += amp; // a+ sigma-
                    }
                }
            }
            BasisKind::SymmetricDicke => {
                for k in 0..spec.n_atoms {
                    let amp = C64::new(spec.j * photon * ladder_coupling(spec.n_atoms, k), 0.0);
                    let row = spec.index(cav - 1, k + 1);
                    let col = spec.index(cav, k);
                    h[(row, col)] += amp;
                    h[(col, row)] += amp;
                }
            }
        }
    }
}

/// Hermitian battery Hamiltonian (real level energies) on the atomic factor,
/// used for energies and ergotropy.
pub fn battery_hamiltonian(spec: &SystemSpec) -> ComplexMatrix {
    let ad = spec.atom_dim();
    let mut h = ComplexMatrix::zeros(ad);
    for at in 0..ad {
        let k = spec.excitations(at) as f64;
        h[(at, at)] = C64::new(spec.x1.re * k + exchange_diag(spec, at), 0.0);
    }
    if spec.basis == BasisKind::FullTensor && spec.v != 0.0 {
        let v = C64::new(spec.v, 0.0);
        for at in 0..ad {
            for src in 0..spec.n_atoms {
                if at & (1 << src) == 0 {
                    continue;
                }
                for dst in 0..spec.n_atoms {
                    if dst == src || at & (1 << dst) != 0 {
                        continue;
                    }
                    let to = (at & !(1 << src)) | (1 << dst);
                    h[(to, at)] += v;
                }
            }
        }
    }
    h
}

/// |photons> on the cavity, every battery in the ground state. Enforces the
/// truncation headroom rule: a coupled cavity needs n_max >= photons + 4.
pub fn initial_photons(spec: &SystemSpec, photons: usize) -> Result<Vec<C64>> {
    spec.validate()?;
    let required = if spec.j > 0.0 { photons + 4 } else { photons };
    if spec.n_max < required {
        return Err(Error::InvalidParams(format!(
            "n_max = {} leaves no truncation headroom for {photons} photons (need >= {required})",
            spec.n_max
        )));
    }
    let mut psi = vec![C64::new(0.0, 0.0); spec.dim()];
    psi[spec.index(photons, 0)] = C64::new(1.0, 0.0);
    Ok(psi)
}

/// Population of the two highest cavity levels; the truncation canary.
pub fn truncation_leak(spec: &SystemSpec, psi: &[C64]) -> f64 {
    let ad = spec.atom_dim();
    let mut leak = 0.0;
    for cav in [spec.n_max, spec.n_max.saturating_sub(1)] {
        for at in 0..ad {
            leak += psi[spec.index(cav, at)].norm_sqr();
        }
    }
    leak
}

/// Single-shot propagation psi -> exp(-i H t) psi.
pub fn evolve(spec: &SystemSpec, psi0: &[C64], t: f64) -> Result<Vec<C64>> {
    let h = build_hamiltonian(spec)?;
    if psi0.len() != h.dim() {
        return Err(Error::Dimension(format!(
            "state length {} does not match system dimension {}",
            psi0.len(),
            h.dim()
        )));
    }
    let u = expm(&h, C64::new(0.0, -t))?;
    let psi = u.matvec(psi0);
    let leak = truncation_leak(spec, &psi);
    if leak > LEAK_WARN {
        log::warn!("truncation leak {leak:.2e} in the top Fock levels; raise n_max");
    }
    Ok(psi)
}

/// States at every grid point, via one step propagator applied repeatedly.
pub fn evolve_series(spec: &SystemSpec, psi0: &[C64], grid: &TimeGrid) -> Result<Vec<Vec<C64>>> {
    let h = build_hamiltonian(spec)?;
    if psi0.len() != h.dim() {
        return Err(Error::Dimension(format!(
            "state length {} does not match system dimension {}",
            psi0.len(),
            h.dim()
        )));
    }
    let u = expm(&h, C64::new(0.0, -grid.step()))?;
    let mut states = Vec::with_capacity(grid.n_points);
    let mut psi = psi0.to_vec();
    let mut worst_leak = 0.0f64;
    for _ in 0..grid.n_points {
        states.push(psi.clone());
        worst_leak = worst_leak.max(truncation_leak(spec, &psi));
        psi = u.matvec(&psi);
    }
    if worst_leak > LEAK_WARN {
        log::warn!("truncation leak {worst_leak:.2e} in the top Fock levels; raise n_max");
    }
    Ok(states)
}

/// Gaussian drive envelope applied uniformly to every battery:
/// Omega(t) = Omega0 exp(-(t - t_c)^2 / 2 sigma^2), carrier omega_l.
#[derive(Debug, Clone, Copy)]
pub struct PulseSpec {
    pub omega0: f64,
    pub t_c: f64,
    pub sigma: f64,
    pub omega_l: f64,
}

impl PulseSpec {
    pub fn new(omega0: f64, t_c: f64, sigma: f64, omega_l: f64) -> Result<Self> {
        if sigma <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "pulse width must be positive, got {sigma}"
            )));
        }
        if omega0 < 0.0 {
            return Err(Error::InvalidParams(format!(
                "peak Rabi frequency must be non-negative, got {omega0}"
            )));
        }
        Ok(Self {
            omega0,
            t_c,
            sigma,
            omega_l,
        })
    }

    pub fn envelope(&self, t: f64) -> f64 {
        let d = (t - self.t_c) / self.sigma;
        self.omega0 * (-0.5 * d * d).exp()
    }
}

/// Static part of the pulsed problem in the frame co-rotating at the drive
/// frequency: cavity and battery energies are shifted down by omega_l per
/// excitation, the decay is untouched.
fn rotating_frame_spec(spec: &SystemSpec, pulse: &PulseSpec) -> SystemSpec {
    SystemSpec {
        omega: spec.omega - pulse.omega_l,
        x1: spec.x1 - C64::new(pulse.omega_l, 0.0),
        ..*spec
    }
}

/// The drive operator sum_i (sigma_i+ + sigma_i-) on the chosen basis,
/// identity on the cavity.
fn drive_operator(spec: &SystemSpec) -> ComplexMatrix {
    let mut d = ComplexMatrix::zeros(spec.dim());
    let one = C64::new(1.0, 0.0);
    for cav in 0..spec.cavity_dim() {
        match spec.basis {
            BasisKind::FullTensor => {
                for at in 0..spec.atom_dim() {
                    for i in 0..spec.n_atoms {
                        if at & (1 << i) != 0 {
                            continue;
                        }
                        let row = spec.index(cav, at | (1 << i));
                        let col = spec.index(cav, at);
                        h_sym(&mut d, row, col, one);
                    }
                }
            }
            BasisKind::SymmetricDicke => {
                for k in 0..spec.n_atoms {
                    let amp = C64::new(ladder_coupling(spec.n_atoms, k), 0.0);
                    let row = spec.index(cav, k + 1);
                    let col = spec.index(cav, k);
                    h_sym(&mut d, row, col, amp);
                }
            }
        }
    }
    d
}

fn h_sym(m: &mut ComplexMatrix, row: usize, col: usize, amp: C64) {
    m[(row, col)] += amp;
    m[(col, row)] += amp;
}

/// Instantaneous rotating-frame matrix at time t, for inspection and tests.
pub fn pulsed_hamiltonian(spec: &SystemSpec, pulse: &PulseSpec, t: f64) -> Result<ComplexMatrix> {
    let static_part = build_hamiltonian(&rotating_frame_spec(spec, pulse))?;
    let drive = drive_operator(spec);
    Ok(static_part.add(&drive.scale(C64::new(0.5 * pulse.envelope(t), 0.0))))
}

/// Fixed-step fourth-order integration of the driven system over the grid.
/// The step must resolve the drive and the spectral width:
/// h <= min(0.01 / Omega0, 0.01 sigma, 0.05 / |H|_max).
pub fn evolve_pulsed(
    spec: &SystemSpec,
    pulse: &PulseSpec,
    psi0: &[C64],
    grid: &TimeGrid,
) -> Result<Vec<Vec<C64>>> {
    let h_static = build_hamiltonian(&rotating_frame_spec(spec, pulse))?;
    if psi0.len() != h_static.dim() {
        return Err(Error::Dimension(format!(
            "state length {} does not match system dimension {}",
            psi0.len(),
            h_static.dim()
        )));
    }
    let drive = drive_operator(spec);
    let h = grid.step();
    let h_norm = h_static.l1_norm() + 0.5 * pulse.omega0 * drive.l1_norm();
    let mut bound = (0.01 * pulse.sigma).min(0.05 / h_norm.max(f64::MIN_POSITIVE));
    if pulse.omega0 > 0.0 {
        bound = bound.min(0.01 / pulse.omega0);
    }
    if h > bound {
        return Err(Error::StepSize { h, bound });
    }

    let deriv = |t: f64, psi: &[C64]| -> Vec<C64> {
        let mut out = h_static.matvec(psi);
        let amp = 0.5 * pulse.envelope(t);
        if amp != 0.0 {
            let dpsi = drive.matvec(psi);
            for (o, d) in out.iter_mut().zip(dpsi) {
                *o += C64::new(amp, 0.0) * d;
            }
        }
        let minus_i = C64::new(0.0, -1.0);
        for z in out.iter_mut() {
            *z *= minus_i;
        }
        out
    };

    let times = grid.times();
    let mut states = Vec::with_capacity(times.len());
    let mut psi = psi0.to_vec();
    states.push(psi.clone());
    for w in times.windows(2) {
        let (t, h) = (w[0], w[1] - w[0]);
        let k1 = deriv(t, &psi);
        let k2 = deriv(t + 0.5 * h, &step(&psi, &k1, 0.5 * h));
        let k3 = deriv(t + 0.5 * h, &step(&psi, &k2, 0.5 * h));
        let k4 = deriv(t + h, &step(&psi, &k3, h));
        for i in 0..psi.len() {
            psi[i] += C64::new(h / 6.0, 0.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        states.push(psi.clone());
    }
    Ok(states)
}

fn step(psi: &[C64], k: &[C64], h: f64) -> Vec<C64> {
    psi.iter()
        .zip(k)
        .map(|(p, kk)| p + C64::new(h, 0.0) * kk)
        .collect()
}

/// Battery reduced density matrix: trace out the cavity index.
pub fn reduced_battery(spec: &SystemSpec, psi: &[C64]) -> ComplexMatrix {
    let ad = spec.atom_dim();
    ComplexMatrix::from_fn(ad, |s, s2| {
        (0..spec.cavity_dim())
            .map(|cav| psi[spec.index(cav, s)] * psi[spec.index(cav, s2)].conj())
            .sum()
    })
}

/// Energy and ergotropy series for a sequence of states on the grid. The
/// two-battery symmetric ladder is embedded into the four-state pair basis
/// (with the dark antisymmetric slot empty) so the pair-basis ergotropy path
/// is exercised; everything else goes through the general sort-and-pair.
pub fn observables(
    spec: &SystemSpec,
    states: &[Vec<C64>],
    grid: &TimeGrid,
) -> Result<(TimeSeries, TimeSeries)> {
    let times = grid.times();
    if states.len() != times.len() {
        return Err(Error::Dimension(format!(
            "{} states for {} grid points",
            states.len(),
            times.len()
        )));
    }
    let h_b = battery_hamiltonian(spec);
    let mut energy = Vec::with_capacity(states.len());
    let mut work = Vec::with_capacity(states.len());
    for psi in states {
        let rho = reduced_battery(spec, psi);
        let rep = if spec.basis == BasisKind::SymmetricDicke && spec.n_atoms == 2 {
            let rho4 = embed_pair_basis(&rho);
            thermo::ergotropy_dicke(&rho4, spec.x1.re, spec.v)?
        } else {
            thermo::ergotropy(&rho, &h_b)?
        };
        energy.push(rep.energy);
        work.push(rep.ergotropy);
    }
    Ok((
        TimeSeries::new(times.clone(), energy)?,
        TimeSeries::new(times, work)?,
    ))
}

/// Symmetric two-battery ladder (G, sym, EE) into the pair basis
/// (G, antisym, sym, EE).
fn embed_pair_basis(rho3: &ComplexMatrix) -> ComplexMatrix {
    let map = [0usize, 2, 3];
    let mut rho4 = ComplexMatrix::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            rho4[(map[i], map[j])] = rho3[(i, j)];
        }
    }
    rho4
}
