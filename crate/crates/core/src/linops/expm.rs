//! Matrix exponential by scaling-and-squaring with diagonal Pade approximants.
//!
//! Follows Higham's degree ladder (3/5/7/9/13) with the published 1-norm
//! thresholds; valid for complex matrices unchanged.

use super::matrix::ComplexMatrix;
use super::NumericPolicy;
use crate::error::{Error, Result};
use crate::C64;

pub fn expm(a: &ComplexMatrix, scale: C64) -> Result<ComplexMatrix> {
    expm_with(a, scale, &NumericPolicy::default())
}

/// exp(scale * a). Rejects arguments whose norm would overflow the
/// exponential rather than returning infinities.
pub fn expm_with(a: &ComplexMatrix, scale: C64, policy: &NumericPolicy) -> Result<ComplexMatrix> {
    let n = a.dim();
    if n > policy.max_dim_expm {
        return Err(Error::Dimension(format!(
            "expm limited to dim <= {}, got {n}",
            policy.max_dim_expm
        )));
    }
    let m = a.scale(scale);
    let norm = m.l1_norm();
    if !norm.is_finite() || norm > policy.expm_norm_limit {
        return Err(Error::NormOverflow { norm });
    }

    let (u, v, squarings) = pade_uv(&m, norm);
    // Pade approximant is (V + U) / (V - U).
    let numer = v.add(&u);
    let denom = v.sub(&u);
    let mut r = denom.solve(&numer)?;
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    Ok(r)
}

fn pade_uv(a: &ComplexMatrix, l1: f64) -> (ComplexMatrix, ComplexMatrix, u32) {
    if l1 < 1.495_585_217_958_292e-2 {
        let (u, v) = pade3(a);
        (u, v, 0)
    } else if l1 < 2.539_398_330_063_23e-1 {
        let (u, v) = pade5(a);
        (u, v, 0)
    } else if l1 < 9.504_178_996_162_932e-1 {
        let (u, v) = pade7(a);
        (u, v, 0)
    } else if l1 < 2.097_847_961_257_068 {
        let (u, v) = pade9(a);
        (u, v, 0)
    } else {
        const THETA13: f64 = 5.371_920_351_148_152;
        let squarings = ((l1 / THETA13).log2().ceil() as i32).max(0) as u32;
        let scaled = a.scale(C64::new(2f64.powi(-(squarings as i32)), 0.0));
        let (u, v) = pade13(&scaled);
        (u, v, squarings)
    }
}

fn poly_uv(a: &ComplexMatrix, powers: &[&ComplexMatrix], b: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    // powers = [A^2, A^4, ...]; U = A * (sum odd coeffs), V = sum even coeffs.
    let n = a.dim();
    let id = ComplexMatrix::identity(n);
    let mut odd = id.scale(C64::new(b[1], 0.0));
    let mut even = id.scale(C64::new(b[0], 0.0));
    for (k, p) in powers.iter().enumerate() {
        let io = 2 * k + 3;
        let ie = 2 * k + 2;
        if io < b.len() {
            odd = odd.add(&p.scale(C64::new(b[io], 0.0)));
        }
        if ie < b.len() {
            even = even.add(&p.scale(C64::new(b[ie], 0.0)));
        }
    }
    (a.matmul(&odd), even)
}

fn pade3(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let a2 = a.matmul(a);
    poly_uv(a, &[&a2], &[120.0, 60.0, 12.0, 1.0])
}

fn pade5(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    poly_uv(a, &[&a2, &a4], &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0])
}

fn pade7(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    poly_uv(
        a,
        &[&a2, &a4, &a6],
        &[17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0],
    )
}

fn pade9(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let a8 = a6.matmul(&a2);
    poly_uv(
        a,
        &[&a2, &a4, &a6, &a8],
        &[
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ],
    )
}

fn pade13(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let re = |x: f64| C64::new(x, 0.0);

    let w = a6
        .scale(re(B[13]))
        .add(&a4.scale(re(B[11])))
        .add(&a2.scale(re(B[9])));
    let odd = a6
        .matmul(&w)
        .add(&a6.scale(re(B[7])))
        .add(&a4.scale(re(B[5])))
        .add(&a2.scale(re(B[3])))
        .add(&ComplexMatrix::identity(a.dim()).scale(re(B[1])));
    let u = a.matmul(&odd);

    let w2 = a6
        .scale(re(B[12]))
        .add(&a4.scale(re(B[10])))
        .add(&a2.scale(re(B[8])));
    let v = a6
        .matmul(&w2)
        .add(&a6.scale(re(B[6])))
        .add(&a4.scale(re(B[4])))
        .add(&a2.scale(re(B[2])))
        .add(&ComplexMatrix::identity(a.dim()).scale(re(B[0])));
    (u, v)
}
