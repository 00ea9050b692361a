// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex-matrix kernel: products, Kronecker products, Hermitian
//! eigendecomposition, partial trace, trace distance, and the
//! column-stacking vectorization used by the superoperator machinery.
//!
//! Everything here is a pure function on value types; no shared mutable
//! state, no internal parallelism.

mod eigen;
mod matrix;
pub(crate) mod solve;

pub use eigen::{eig_hermitian, hermitian_eigenvalues, HermitianEigen, HERMITICITY_TOL};
pub use matrix::ComplexMatrix;

use num_complex::Complex64;

use crate::error::{Result, SimError};

/// Kronecker product a ⊗ b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a.get(i, j);
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out.set(i * br + k, j * bc + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Trace out every site except `keep` (1-based) from an N-site state.
///
/// Site 1 is the leftmost Kronecker factor. The result is the 2x2 reduced
/// matrix of the kept site; its trace equals the input trace.
pub fn partial_trace(rho: &ComplexMatrix, n_sites: usize, keep: usize) -> Result<ComplexMatrix> {
    let dim = 1usize << n_sites;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(SimError::DimensionMismatch(format!(
            "expected {dim}x{dim} state for {n_sites} sites, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    if keep < 1 || keep > n_sites {
        return Err(SimError::IndexOutOfRange(format!(
            "keep = {keep} not in 1..={n_sites}"
        )));
    }
    // Bit position of the kept site: site 1 is the most significant bit.
    let shift = n_sites - keep;
    let mut out = ComplexMatrix::zeros(2, 2);
    for row in 0..dim {
        let a = (row >> shift) & 1;
        let rest = row & !(1 << shift);
        // Column index with the kept-site bit replaced by b, others equal.
        for b in 0..2usize {
            let col = rest | (b << shift);
            out.add_assign_at(a, b, rho.get(row, col));
        }
    }
    Ok(out)
}

/// Trace distance (1/2) * sum |eigenvalues(a - b)| between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(SimError::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    a.require_hermitian(HERMITICITY_TOL)?;
    b.require_hermitian(HERMITICITY_TOL)?;
    let diff = a - b;
    let values = hermitian_eigenvalues(&diff)?;
    Ok(0.5 * values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Column-stacking vectorization: entry (i, j) lands at index j*rows + i.
pub fn vectorize(m: &ComplexMatrix) -> Vec<Complex64> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut v = Vec::with_capacity(rows * cols);
    for j in 0..cols {
        for i in 0..rows {
            v.push(m.get(i, j));
        }
    }
    v
}

/// Inverse of [`vectorize`] for an n x n matrix.
pub fn unvectorize(v: &[Complex64], n: usize) -> ComplexMatrix {
    assert_eq!(v.len(), n * n, "vector length must be n^2");
    ComplexMatrix::from_fn(n, n, |i, j| v[j * n + i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::diag_real(&[1.0, -1.0])
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert!(kron(&i2, &i2).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_sigma_z_with_identity_is_diagonal() {
        let m = kron(&sigma_z(), &ComplexMatrix::identity(2));
        let expected = ComplexMatrix::diag_real(&[1.0, 1.0, -1.0, -1.0]);
        assert!(m.approx_eq(&expected, 0.0));
    }

    #[test]
    fn kron_sigma_x_sigma_x_is_antidiagonal() {
        let m = kron(&sigma_x(), &sigma_x());
        // <00|.|11> = <01|.|10> = 1, zero diagonal.
        for i in 0..4 {
            assert_eq!(m.get(i, i), c(0., 0.));
            assert_eq!(m.get(i, 3 - i), c(1., 0.));
        }
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let e = eig_hermitian(&ComplexMatrix::diag_real(&[1.0, -1.0])).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
        // Columns are the swapped identity basis vectors, up to phase.
        assert!((e.vectors.get(1, 0).norm() - 1.0).abs() < 1e-14);
        assert!((e.vectors.get(0, 1).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_sigma_x_gives_plus_minus_one() {
        let e = eig_hermitian(&sigma_x()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        // |-> = (|0> - |1>)/sqrt(2) up to phase: components of equal
        // magnitude and opposite relative sign.
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for col in 0..2 {
            for row in 0..2 {
                assert!((e.vectors.get(row, col).norm() - inv_sqrt2).abs() < 1e-14);
            }
        }
        let rel_minus = e.vectors.get(1, 0) / e.vectors.get(0, 0);
        let rel_plus = e.vectors.get(1, 1) / e.vectors.get(0, 1);
        assert!((rel_minus + 1.0).norm() < 1e-13);
        assert!((rel_plus - 1.0).norm() < 1e-13);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, 2, vec![c(0., 0.), c(1., 0.), c(0.5, 0.), c(0., 0.)]);
        assert!(matches!(
            eig_hermitian(&m),
            Err(crate::error::SimError::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let rho1 = ComplexMatrix::diag_real(&[0.7, 0.3]);
        let mut rho2 = ComplexMatrix::diag_real(&[0.4, 0.6]);
        rho2.set(0, 1, c(0.1, 0.05));
        rho2.set(1, 0, c(0.1, -0.05));
        let joint = kron(&rho1, &rho2);
        let red1 = partial_trace(&joint, 2, 1).unwrap();
        let red2 = partial_trace(&joint, 2, 2).unwrap();
        assert!(red1.approx_eq(&rho1, 1e-14));
        assert!(red2.approx_eq(&rho2, 1e-14));
    }

    #[test]
    fn partial_trace_of_maximally_mixed_is_maximally_mixed() {
        let rho = ComplexMatrix::identity(4).scale_re(0.25);
        let red = partial_trace(&rho, 2, 2).unwrap();
        assert!(red.approx_eq(&ComplexMatrix::identity(2).scale_re(0.5), 1e-15));
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        // |phi+> = (|00> + |11>)/sqrt(2)
        let mut rho = ComplexMatrix::zeros(4, 4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                rho.set(i, j, c(0.5, 0.0));
            }
        }
        let red = partial_trace(&rho, 2, 1).unwrap();
        assert!(red.approx_eq(&ComplexMatrix::identity(2).scale_re(0.5), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = ComplexMatrix::identity(3);
        assert!(partial_trace(&rho, 2, 1).is_err());
        let rho4 = ComplexMatrix::identity(4).scale_re(0.25);
        assert!(partial_trace(&rho4, 2, 3).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let rho = ComplexMatrix::diag_real(&[0.25, 0.75]);
        assert_eq!(trace_distance(&rho, &rho).unwrap(), 0.0);

        let p0 = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert!((trace_distance(&p0, &p1).unwrap() - 1.0).abs() < 1e-15);

        let mixed = ComplexMatrix::identity(2).scale_re(0.5);
        let tilted = ComplexMatrix::diag_real(&[0.6, 0.4]);
        assert!((trace_distance(&mixed, &tilted).unwrap() - 0.1).abs() < 1e-14);
    }

    #[test]
    fn vectorize_roundtrip_and_column_stacking() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64, j as f64));
        let v = vectorize(&m);
        // Column stacking: (i, j) at j*n + i.
        assert_eq!(v[0 * 3 + 1], c(1.0, 0.0));
        assert_eq!(v[2 * 3 + 0], c(0.0, 2.0));
        assert!(unvectorize(&v, 3).approx_eq(&m, 0.0));
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        // Overdetermined consistent system.
        let m = ComplexMatrix::from_vec(
            3,
            2,
            vec![c(1., 0.), c(0., 1.), c(0., 0.), c(2., 0.), c(1., 1.), c(0., -1.)],
        );
        let x_true = [c(0.5, -0.25), c(1.0, 0.75)];
        let b: Vec<Complex64> = (0..3)
            .map(|i| m.get(i, 0) * x_true[0] + m.get(i, 1) * x_true[1])
            .collect();
        let ls = solve::qr_least_squares(&m, &b);
        assert!((ls.solution[0] - x_true[0]).norm() < 1e-13);
        assert!((ls.solution[1] - x_true[1]).norm() < 1e-13);
    }

    #[test]
    fn smallest_singular_estimate_detects_rank_deficiency() {
        // Rank-1 2x2 matrix: smallest singular value is 0.
        let m = ComplexMatrix::from_vec(2, 2, vec![c(1., 0.), c(2., 0.), c(2., 0.), c(4., 0.)]);
        let ls = solve::qr_least_squares(&m, &[c(0., 0.), c(0., 0.)]);
        assert!(solve::smallest_singular_estimate(&ls.r) < 1e-12);

        let id = ComplexMatrix::identity(2);
        let ls = solve::qr_least_squares(&id, &[c(0., 0.), c(0., 0.)]);
        assert!((solve::smallest_singular_estimate(&ls.r) - 1.0).abs() < 1e-10);
    }

    // --- property tests -------------------------------------------------

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec(arb_complex(), n * n)
            .prop_map(move |data| ComplexMatrix::from_vec(n, n, data))
    }

    fn arb_hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        arb_matrix(n).prop_map(|m| m.hermitize())
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_matrix(2), b in arb_matrix(2), d in arb_matrix(2)) {
            let left = kron(&kron(&a, &b), &d);
            let right = kron(&a, &kron(&b, &d));
            prop_assert!(left.approx_eq(&right, 1e-12));
        }

        #[test]
        fn eig_reconstructs_hermitian_input(a in arb_hermitian(8)) {
            let e = eig_hermitian(&a).unwrap();
            let residual = (&e.reconstruct() - &a).max_abs();
            prop_assert!(residual <= 1e-10 * a.max_abs().max(1.0));
            let unitary_defect = (&e.vectors.adjoint().matmul(&e.vectors)
                - &ComplexMatrix::identity(8)).max_abs();
            prop_assert!(unitary_defect <= 1e-10);
        }

        #[test]
        fn partial_trace_preserves_trace(a in arb_hermitian(8), keep in 1usize..=3) {
            let red = partial_trace(&a, 3, keep).unwrap();
            prop_assert!((red.trace() - a.trace()).norm() <= 1e-12);
        }

        #[test]
        fn trace_distance_symmetric_triangle(
            a in arb_hermitian(4),
            b in arb_hermitian(4),
            d in arb_hermitian(4),
        ) {
            let ab = trace_distance(&a, &b).unwrap();
            let ba = trace_distance(&b, &a).unwrap();
            let ad = trace_distance(&a, &d).unwrap();
            let db = trace_distance(&d, &b).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-10);
            prop_assert!(ab <= ad + db + 1e-10);
        }
    }
}
