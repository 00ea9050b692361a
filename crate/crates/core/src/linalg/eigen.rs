// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! Quadratically convergent for the small dense matrices this crate works
//! with (dimension <= 256) and fully deterministic: the sweep order is
//! fixed, so identical inputs always produce identical output.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::Result;

/// Hermiticity tolerance applied to eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Eigendecomposition of a Hermitian matrix: A = V diag(values) V†.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, sorted ascending.
    pub values: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuild V diag(values) V†; used by residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.vectors.get(i, j) * self.values[j]);
        scaled.matmul(&self.vectors.adjoint())
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with `NonHermitianInput` if `a` deviates from Hermiticity by more
/// than 1e-12 in any entry. Degenerate eigenvalues are fine; the ordering
/// inside a degenerate cluster is unspecified but deterministic.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.require_hermitian(HERMITICITY_TOL)?;
    let (values, vectors) = jacobi(a, true);
    let vectors = vectors.expect("vectors requested");
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only; skips accumulating the rotations.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.require_hermitian(HERMITICITY_TOL)?;
    Ok(jacobi(a, false).0)
}

/// Cyclic Jacobi on the Hermitian matrix `a`. Returns eigenvalues sorted
/// ascending and, when requested, the matching eigenvector columns.
fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut m = a.hermitize();
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    if n > 1 {
        let scale = m.max_abs().max(1.0);
        let stop = 1e-15 * scale;
        // 40 sweeps is far beyond what quadratic convergence ever needs;
        // it only bounds the loop if the stop test is unreachable.
        for _ in 0..40 {
            let mut off: f64 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(m.get(p, q).norm());
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut m, v.as_mut(), p, q, stop);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap().then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j])));
    (values, vectors)
}

/// One complex Jacobi rotation annihilating m[p][q].
fn rotate(m: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize, skip: f64) {
    let apq = m.get(p, q);
    let mag = apq.norm();
    if mag <= skip {
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    let tau = (aqq - app) / (2.0 * mag);
    // Smaller-magnitude root of t^2 + 2 tau t - 1 = 0.
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = phase * s; // s e^{i phi}

    let n = m.rows();
    // Rows p and q of J† M.
    for k in 0..n {
        let mpk = m.get(p, k);
        let mqk = m.get(q, k);
        m.set(p, k, mpk * c - mqk * s_phase);
        m.set(q, k, mpk * s_phase.conj() + mqk * c);
    }
    // Columns p and q of (J† M) J.
    for k in 0..n {
        let mkp = m.get(k, p);
        let mkq = m.get(k, q);
        m.set(k, p, mkp * c - mkq * s_phase.conj());
        m.set(k, q, mkp * s_phase + mkq * c);
    }
    // Exact diagonal update keeps the diagonal strictly real.
    m.set(p, p, Complex64::new(app - t * mag, 0.0));
    m.set(q, q, Complex64::new(aqq + t * mag, 0.0));
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v.get(k, p);
            let vkq = v.get(k, q);
            v.set(k, p, vkp * c - vkq * s_phase.conj());
            v.set(k, q, vkp * s_phase + vkq * c);
        }
    }
}
