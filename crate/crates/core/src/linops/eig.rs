//! Hermitian (Jacobi) and general (Hessenberg + shifted QR) eigensolvers for
//! small dense complex matrices.
//!
//! Everything here is hand-rolled: the matrices in this crate are 3x3 up to a
//! few dozen, where determinism and a dependency-free build matter more than
//! asymptotics.

use super::matrix::{vec_norm, vec_normalize, ComplexMatrix};
use super::NumericPolicy;
use crate::error::{Error, Result};
use crate::C64;

/// Right eigenpairs of a square complex matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues, sorted ascending by (re, im) for the general solver and
    /// ascending by value (real) for the Hermitian solver.
    pub values: Vec<C64>,
    /// Unit-norm right eigenvectors, `vectors[k]` paired with `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

impl EigenSystem {
    /// Reassemble sum_k values[k] |v_k><v_k| (meaningful for normal matrices).
    pub fn reassemble(&self) -> ComplexMatrix {
        let n = self.vectors.len();
        let mut out = ComplexMatrix::zeros(n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += lambda * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenSystem> {
    eig_hermitian_with(a, &NumericPolicy::default())
}

/// Jacobi eigensolver for Hermitian matrices: real ascending eigenvalues,
/// orthonormal eigenvectors. Rejects non-Hermitian input with the defect norm.
pub fn eig_hermitian_with(a: &ComplexMatrix, policy: &NumericPolicy) -> Result<EigenSystem> {
    let n = a.dim();
    let defect = a.hermiticity_defect();
    let tol = policy.hermitian_tol * a.max_abs().max(1.0);
    if defect > tol {
        return Err(Error::NotHermitian { defect, tol });
    }
    if n == 0 {
        return Ok(EigenSystem {
            values: vec![],
            vectors: vec![],
        });
    }

    // Symmetrize exactly so the diagonal stays real under rotation updates.
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let fro = m.frobenius_norm();
    let stop = (1e-14 * fro).max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let beta = m[(p, q)];
                let b = beta.norm();
                if b <= stop / (n as f64) {
                    continue;
                }
                let phase = beta / b;
                let alpha = m[(p, p)].re;
                let gamma = m[(q, q)].re;
                // Rotation angle zeroing the (p, q) element of the phase-stripped
                // 2x2 block [[alpha, b], [b, gamma]].
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J restricted to the (p, q) plane: [[e^{i phi} c, -e^{i phi} s], [s, c]].
                let jp = phase * c;
                let jps = phase * s;
                // Rows: (J^H M)
                for j in 0..n {
                    let mp = m[(p, j)];
                    let mq = m[(q, j)];
                    m[(p, j)] = jp.conj() * mp + s * mq;
                    m[(q, j)] = -jps.conj() * mp + c * mq;
                }
                // Columns: (M J)
                for i in 0..n {
                    let mp = m[(i, p)];
                    let mq = m[(i, q)];
                    m[(i, p)] = mp * jp + mq * s;
                    m[(i, q)] = -mp * jps + mq * c;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * jp + vq * s;
                    v[(i, q)] = -vp * jps + vq * c;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { iterations: 100 });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| C64::new(m[(i, i)].re, 0.0)).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<C64> = (0..n).map(|i| v[(i, k)]).collect();
            vec_normalize(&mut col);
            col
        })
        .collect();
    Ok(EigenSystem { values, vectors })
}

pub fn eig_general(a: &ComplexMatrix) -> Result<EigenSystem> {
    eig_general_with(a, &NumericPolicy::default())
}

/// General complex eigensolver via Hessenberg reduction and shifted QR,
/// followed by triangular back-substitution for the eigenvectors.
///
/// Eigenpairs are sorted lexicographically by (re, im). A matrix whose
/// computed eigenvectors fail the residual bound, or whose degenerate
/// eigenvalue cluster has a deficient eigenspace, is reported as defective.
pub fn eig_general_with(a: &ComplexMatrix, policy: &NumericPolicy) -> Result<EigenSystem> {
    let n = a.dim();
    if n > policy.max_dim_eig {
        return Err(Error::InvalidParams(format!(
            "general eigensolver limited to dim <= {}, got {n}",
            policy.max_dim_eig
        )));
    }
    if n == 0 {
        return Ok(EigenSystem {
            values: vec![],
            vectors: vec![],
        });
    }
    if n == 1 {
        return Ok(EigenSystem {
            values: vec![a[(0, 0)]],
            vectors: vec![vec![C64::new(1.0, 0.0)]],
        });
    }

    let a_norm = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let (mut t, mut z) = hessenberg(a);
    qr_iterate(&mut t, &mut z, a_norm)?;

    // Eigenvectors of the triangular factor by back-substitution, mapped back
    // through the Schur basis.
    let ulp = f64::EPSILON * t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut pairs: Vec<(C64, Vec<C64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[k] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut sum = C64::new(0.0, 0.0);
            for m in j + 1..=k {
                sum += t[(j, m)] * x[m];
            }
            let mut d = t[(j, j)] - lambda;
            if d.norm() < ulp {
                d = C64::new(ulp, 0.0);
            }
            x[j] = -sum / d;
        }
        let mut v = z.matvec(&x);
        vec_normalize(&mut v);
        pairs.push((lambda, v));
    }

    // Residual gate: every returned pair must satisfy |A v - lambda v| within
    // tolerance of |A|.
    for (lambda, v) in &pairs {
        let av = a.matvec(v);
        let res: f64 = av
            .iter()
            .zip(v)
            .map(|(a_i, v_i)| (a_i - lambda * v_i).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if res > policy.general_residual * a_norm {
            return Err(Error::Defective(format!(
                "eigenvector residual {res:.3e} exceeds {:.3e}",
                policy.general_residual * a_norm
            )));
        }
    }

    // Degenerate clusters must span a genuine eigenspace; near-parallel
    // eigenvectors for a repeated eigenvalue expose a Jordan block.
    let val_scale = pairs
        .iter()
        .map(|(l, _)| l.norm())
        .fold(1.0f64, f64::max);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        pairs[i]
            .0
            .re
            .total_cmp(&pairs[j].0.re)
            .then(pairs[i].0.im.total_cmp(&pairs[j].0.im))
    });
    let mut cluster: Vec<Vec<C64>> = Vec::new();
    let mut cluster_val = C64::new(f64::NAN, 0.0);
    for &idx in &order {
        let (lambda, v) = &pairs[idx];
        if !cluster.is_empty() && (lambda - cluster_val).norm() <= policy.degeneracy_tol * val_scale
        {
            // Orthogonalize against the cluster found so far.
            let mut w = v.clone();
            for u in &cluster {
                let overlap: C64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= overlap * ui;
                }
            }
            let rem = vec_norm(&w);
            if rem < policy.defective_overlap {
                return Err(Error::Defective(format!(
                    "repeated eigenvalue {lambda} has a deficient eigenspace \
                     (independent component {rem:.3e})"
                )));
            }
            vec_normalize(&mut w);
            cluster.push(w);
        } else {
            cluster.clear();
            cluster.push(v.clone());
            cluster_val = *lambda;
        }
    }

    let values = order.iter().map(|&i| pairs[i].0).collect();
    let vectors = order.iter().map(|&i| pairs[i].1.clone()).collect();
    Ok(EigenSystem { values, vectors })
}

/// Reduce to upper Hessenberg form by Householder reflections.
/// Returns (H, Q) with A = Q H Q^H.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&v);
        if xnorm < f64::MIN_POSITIVE {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        v[0] -= -phase * xnorm;
        let vnorm = vec_norm(&v);
        if vnorm < 1e-300 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        householder_left(&mut h, &v, k + 1);
        householder_right(&mut h, &v, k + 1);
        householder_right(&mut q, &v, k + 1);
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// m <- (I - 2 v v^H) m, with v acting on rows off..off+v.len().
fn householder_left(m: &mut ComplexMatrix, v: &[C64], off: usize) {
    let n = m.dim();
    for j in 0..n {
        let mut w = C64::new(0.0, 0.0);
        for (i, vi) in v.iter().enumerate() {
            w += vi.conj() * m[(off + i, j)];
        }
        let w2 = 2.0 * w;
        for (i, vi) in v.iter().enumerate() {
            let delta = vi * w2;
            m[(off + i, j)] -= delta;
        }
    }
}

/// m <- m (I - 2 v v^H), with v acting on columns off..off+v.len().
fn householder_right(m: &mut ComplexMatrix, v: &[C64], off: usize) {
    let n = m.dim();
    for i in 0..n {
        let mut w = C64::new(0.0, 0.0);
        for (j, vj) in v.iter().enumerate() {
            w += m[(i, off + j)] * vj;
        }
        let w2 = 2.0 * w;
        for (j, vj) in v.iter().enumerate() {
            let delta = w2 * vj.conj();
            m[(i, off + j)] -= delta;
        }
    }
}

/// Complex Givens pair (c real, s complex) with
/// [c, s; -conj(s), c] [f; g] = [r; 0].
fn givens(f: C64, g: C64) -> (f64, C64) {
    if g.norm() == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / d;
    let s = (f / f.norm()) * g.conj() / d;
    (c, s)
}

/// Shifted QR iteration driving a Hessenberg matrix to triangular form while
/// accumulating the Schur basis in `z`.
fn qr_iterate(t: &mut ComplexMatrix, z: &mut ComplexMatrix, a_norm: f64) -> Result<()> {
    let n = t.dim();
    let eps = f64::EPSILON;
    let floor = f64::MIN_POSITIVE / eps;
    let mut hi = n;
    let mut total_iters = 0usize;
    let max_total = 100 * n;
    let mut iters_this_block = 0usize;

    while hi > 1 {
        // Zero negligible subdiagonals.
        for i in 1..hi {
            let d = t[(i - 1, i - 1)].norm() + t[(i, i)].norm();
            let thresh = eps * d.max(eps * a_norm) + floor;
            if t[(i, i - 1)].norm() <= thresh {
                t[(i, i - 1)] = C64::new(0.0, 0.0);
            }
        }
        // Deflate converged trailing eigenvalues.
        if t[(hi - 1, hi - 2)].norm() == 0.0 {
            hi -= 1;
            iters_this_block = 0;
            continue;
        }
        // Active block [lo, hi).
        let mut lo = hi - 1;
        while lo > 0 && t[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }

        total_iters += 1;
        iters_this_block += 1;
        if total_iters > max_total {
            return Err(Error::NoConvergence {
                iterations: max_total,
            });
        }

        // Wilkinson shift from the trailing 2x2, with an occasional
        // exceptional shift to break symmetry stalls.
        let sigma = if iters_this_block % 12 == 0 {
            t[(hi - 1, hi - 1)] + C64::new(0.75 * t[(hi - 1, hi - 2)].norm(), 0.0)
        } else {
            let aa = t[(hi - 2, hi - 2)];
            let bb = t[(hi - 2, hi - 1)];
            let cc = t[(hi - 1, hi - 2)];
            let dd = t[(hi - 1, hi - 1)];
            let half = 0.5 * (aa - dd);
            let disc = (half * half + bb * cc).sqrt();
            let mu1 = 0.5 * (aa + dd) + disc;
            let mu2 = 0.5 * (aa + dd) - disc;
            if (mu1 - dd).norm() <= (mu2 - dd).norm() {
                mu1
            } else {
                mu2
            }
        };

        for i in lo..hi {
            let d = t[(i, i)] - sigma;
            t[(i, i)] = d;
        }
        let mut rotations: Vec<(usize, f64, C64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi - 1 {
            let (c, s) = givens(t[(i, i)], t[(i + 1, i)]);
            rotations.push((i, c, s));
            for j in i..n {
                let aij = t[(i, j)];
                let bij = t[(i + 1, j)];
                t[(i, j)] = c * aij + s * bij;
                t[(i + 1, j)] = -s.conj() * aij + c * bij;
            }
        }
        for &(i, c, s) in &rotations {
            let rmax = (i + 2).min(n);
            for r in 0..rmax {
                let ari = t[(r, i)];
                let arj = t[(r, i + 1)];
                t[(r, i)] = c * ari + s.conj() * arj;
                t[(r, i + 1)] = -s * ari + c * arj;
            }
            for r in 0..n {
                let zri = z[(r, i)];
                let zrj = z[(r, i + 1)];
                z[(r, i)] = c * zri + s.conj() * zrj;
                z[(r, i + 1)] = -s * zri + c * zrj;
            }
        }
        for i in lo..hi {
            let d = t[(i, i)] + sigma;
            t[(i, i)] = d;
        }
    }
    // Clean anything below the diagonal.
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok(())
}
