//! Shared helpers for the oracle suites.

use qb_core::{C64, ComplexMatrix, EitParams};

/// The single-battery charging parameter set used across the studies.
pub fn charging_params() -> EitParams {
    EitParams::new(0.25, 1.0, 0.5, 50.0, 5.0, 1.0, 0.5, 0.05).unwrap()
}

/// Fixed-step fourth-order integration of i u' = M u.
pub fn rk4_schrodinger(m: &ComplexMatrix, u0: &[C64], t_end: f64, steps: usize) -> Vec<C64> {
    let h = t_end / steps as f64;
    let minus_i = C64::new(0.0, -1.0);
    let deriv = |u: &[C64]| -> Vec<C64> {
        m.matvec(u).into_iter().map(|z| z * minus_i).collect()
    };
    let mut u = u0.to_vec();
    for _ in 0..steps {
        let k1 = deriv(&u);
        let k2 = deriv(&shift(&u, &k1, 0.5 * h));
        let k3 = deriv(&shift(&u, &k2, 0.5 * h));
        let k4 = deriv(&shift(&u, &k3, h));
        for i in 0..u.len() {
            u[i] += C64::new(h / 6.0, 0.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    u
}

fn shift(u: &[C64], k: &[C64], h: f64) -> Vec<C64> {
    u.iter()
        .zip(k)
        .map(|(a, b)| a + C64::new(h, 0.0) * b)
        .collect()
}

/// xorshift-based uniform sampler for deterministic sweeps.
pub struct Sampler(u64);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        lo + (hi - lo) * ((self.0 >> 11) as f64 / (1u64 << 53) as f64)
    }
}
