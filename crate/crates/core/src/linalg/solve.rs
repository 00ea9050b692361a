// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Householder QR least squares for tall complex systems.
//!
//! Used by the steady-state solver: the stacked system [L; trace-row] x =
//! [0; 1] is solved in the least-squares sense, and the retained triangular
//! factor drives an inverse-iteration estimate of the smallest singular
//! value (the kernel-degeneracy check).

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// Least-squares solution of an overdetermined complex system.
pub struct LeastSquares {
    /// Solution minimizing ||M x - b||_2.
    pub solution: Vec<Complex64>,
    /// Upper-triangular factor of M; satisfies M†M = R†R.
    pub r: ComplexMatrix,
}

/// Solve min ||M x - b|| by Householder QR. Requires rows >= cols.
pub fn qr_least_squares(m: &ComplexMatrix, b: &[Complex64]) -> LeastSquares {
    let rows = m.rows();
    let cols = m.cols();
    assert!(rows >= cols, "least squares requires rows >= cols");
    assert_eq!(b.len(), rows);

    let mut a: Vec<Complex64> = m.data().to_vec();
    let mut rhs = b.to_vec();

    for k in 0..cols {
        // Householder vector for column k, rows k..
        let mut norm_sq = 0.0;
        for i in k..rows {
            norm_sq += a[i * cols + k].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k * cols + k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x - alpha e1, beta = 2 / ||v||^2
        let v0 = x0 - alpha;
        let vnorm_sq = norm_sq - x0.norm_sqr() + v0.norm_sqr();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        a[k * cols + k] = v0;

        // Apply H = I - beta v v† to the remaining columns.
        for j in (k + 1)..cols {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k..rows {
                dot += a[i * cols + k].conj() * a[i * cols + j];
            }
            let f = dot * beta;
            for i in k..rows {
                let vk = a[i * cols + k];
                a[i * cols + j] -= f * vk;
            }
        }
        // ... and to the right-hand side.
        let mut dot = Complex64::new(0.0, 0.0);
        for i in k..rows {
            dot += a[i * cols + k].conj() * rhs[i];
        }
        let f = dot * beta;
        for i in k..rows {
            rhs[i] -= f * a[i * cols + k];
        }
        a[k * cols + k] = alpha;
    }

    // R is the upper triangle of the reduced matrix.
    let r = ComplexMatrix::from_fn(cols, cols, |i, j| {
        if j >= i {
            a[i * cols + j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    // Back substitution R x = rhs[0..cols].
    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    for i in (0..cols).rev() {
        let mut acc = rhs[i];
        for j in (i + 1)..cols {
            acc -= r.get(i, j) * x[j];
        }
        x[i] = acc / guard(r.get(i, i));
    }

    LeastSquares { solution: x, r }
}

/// Estimate the smallest singular value of the factored matrix M via
/// inverse iteration on M†M = R†R. A handful of iterations is plenty: when
/// the smallest singular value is far below the rest, one step already
/// separates it by many orders of magnitude.
pub fn smallest_singular_estimate(r: &ComplexMatrix) -> f64 {
    let n = r.cols();
    // Deterministic, mildly irregular start vector.
    let mut y: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + 0.37 * ((j as f64) * 2.3).sin(), 0.21 * ((j as f64) * 1.7).cos()))
        .collect();
    normalize(&mut y);

    for _ in 0..6 {
        let u = solve_lower_adjoint(r, &y);
        let mut z = solve_upper(r, &u);
        let nz = norm(&z);
        if !nz.is_finite() || nz == 0.0 {
            return 0.0;
        }
        for v in &mut z {
            *v /= nz;
        }
        y = z;
    }
    // sigma_min ~ ||M y|| = ||R y|| for the converged unit direction.
    let ry = r.matvec(&y);
    norm(&ry)
}

fn solve_upper(r: &ComplexMatrix, b: &[Complex64]) -> Vec<Complex64> {
    let n = r.cols();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= r.get(i, j) * x[j];
        }
        x[i] = acc / guard(r.get(i, i));
    }
    x
}

/// Solve R† x = b (R† is lower triangular).
fn solve_lower_adjoint(r: &ComplexMatrix, b: &[Complex64]) -> Vec<Complex64> {
    let n = r.cols();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..i {
            acc -= r.get(j, i).conj() * x[j];
        }
        x[i] = acc / guard(r.get(i, i).conj());
    }
    x
}

/// Keep triangular solves finite when a pivot underflows to zero.
fn guard(d: Complex64) -> Complex64 {
    if d.norm() < 1e-290 {
        Complex64::new(1e-290, 0.0)
    } else {
        d
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}
