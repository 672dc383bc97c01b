//! Dense square complex matrix, row-major storage.

use crate::error::{Error, Result};
use crate::C64;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense square complex matrix. The universal carrier for Hamiltonians,
/// density matrices and propagators in this crate.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row-major entries; `entries.len()` must equal `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (max absolute column sum).
    pub fn l1_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Deviation from Hermiticity, max |A[i][j] - conj(A[j][i])|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// Hermitian up to `tol` relative to the max-norm (absolute for tiny matrices).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol * self.max_abs().max(1.0)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.entries[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += aik * orow[j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        debug_assert_eq!(self.dim, v.len());
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let row = self.row(i);
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product, `self` on the slow (left) index.
    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.dim, other.dim);
        Self::from_fn(na * nb, |i, j| {
            self[(i / nb, j / nb)] * other[(i % nb, j % nb)]
        })
    }

    /// Solve `self * X = B` by LU with partial pivoting. `self` must be
    /// well-conditioned enough for the caller's purpose; a numerically
    /// singular pivot is reported as an error.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        debug_assert_eq!(self.dim, b.dim);
        let n = self.dim;
        let mut lu = self.clone();
        let mut x = b.clone();
        for k in 0..n {
            let (mut pmax, mut prow) = (lu[(k, k)].norm(), k);
            for i in k + 1..n {
                let m = lu[(i, k)].norm();
                if m > pmax {
                    pmax = m;
                    prow = i;
                }
            }
            if pmax < f64::EPSILON * self.max_abs().max(1.0) * 1e-3 {
                return Err(Error::Dimension(format!(
                    "singular pivot {pmax:.3e} at column {k} in linear solve"
                )));
            }
            if prow != k {
                for j in 0..n {
                    lu.entries.swap(k * n + j, prow * n + j);
                    x.entries.swap(k * n + j, prow * n + j);
                }
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] -= f * s;
                }
                for j in 0..n {
                    let s = x[(k, j)];
                    x[(i, j)] -= f * s;
                }
            }
        }
        for k in (0..n).rev() {
            let piv = lu[(k, k)];
            for j in 0..n {
                x[(k, j)] /= piv;
            }
            for i in 0..k {
                let f = lu[(i, k)];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let s = x[(k, j)];
                    x[(i, j)] -= f * s;
                }
            }
        }
        Ok(x)
    }

    /// Outer product |u><v| as a matrix (dim = u.len()).
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        debug_assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product <u|v> (conjugate-linear in the first argument).
pub fn vec_inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_normalize(v: &mut [C64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}
