//! Property tests for the linear-algebra layer.

use proptest::prelude::*;
use qb_core::linops::{
    eig_general, eig_hermitian, expm, partial_trace, ComplexMatrix, Factor,
};
use qb_core::C64;

fn hermitian_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    let n_entries = dim * dim;
    prop::collection::vec(-1.0f64..1.0, n_entries * 2).prop_map(move |vals| {
        let mut m = ComplexMatrix::zeros(dim);
        let mut it = vals.into_iter();
        for i in 0..dim {
            for j in i..dim {
                let re = it.next().unwrap();
                let im = it.next().unwrap();
                if i == j {
                    m[(i, j)] = C64::new(re, 0.0);
                } else {
                    m[(i, j)] = C64::new(re, im);
                    m[(j, i)] = C64::new(re, -im);
                }
            }
        }
        m
    })
}

fn general_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, dim * dim * 2).prop_map(move |vals| {
        let mut m = ComplexMatrix::zeros(dim);
        let mut it = vals.into_iter();
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = C64::new(it.next().unwrap(), it.next().unwrap());
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_eigenpairs_reassemble(a in hermitian_matrix(4)) {
        let sys = eig_hermitian(&a).unwrap();
        let back = sys.reassemble();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((back[(i, j)] - a[(i, j)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn general_agrees_with_hermitian_on_hermitian_input(a in hermitian_matrix(4)) {
        let hs = eig_hermitian(&a).unwrap();
        let gs = eig_general(&a).unwrap();
        let scale = a.max_abs().max(1.0);
        for (h, g) in hs.values.iter().zip(&gs.values) {
            prop_assert!((h - g).norm() < 1e-9 * scale, "{h} vs {g}");
        }
    }

    #[test]
    fn exponential_is_additive_in_time(
        a in general_matrix(3),
        t1 in 0.1f64..3.0,
        t2 in 0.1f64..3.0,
    ) {
        let scale = C64::new(0.0, -1.0);
        let u1 = expm(&a, scale * t1).unwrap();
        let u2 = expm(&a, scale * t2).unwrap();
        let u12 = expm(&a, scale * (t1 + t2)).unwrap();
        let prod = u1.matmul(&u2);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((prod[(i, j)] - u12[(i, j)]).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn trivial_partial_trace_is_identity(rho in hermitian_matrix(4)) {
        // Tracing out a one-dimensional factor changes nothing.
        let kept = partial_trace(&rho, (4, 1), Factor::A).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((kept[(i, j)] - rho[(i, j)]).norm() < 1e-14);
            }
        }
        let kept_b = partial_trace(&rho, (1, 4), Factor::B).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((kept_b[(i, j)] - rho[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_trace_preserves_trace(rho in hermitian_matrix(6)) {
        let a = partial_trace(&rho, (2, 3), Factor::A).unwrap();
        let b = partial_trace(&rho, (2, 3), Factor::B).unwrap();
        prop_assert!((a.trace() - rho.trace()).norm() < 1e-12);
        prop_assert!((b.trace() - rho.trace()).norm() < 1e-12);
    }
}
