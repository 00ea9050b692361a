// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Steady states: null vector of the Liouvillian, with a long-time
//! integration fallback.
//!
//! The null vector comes from the least-squares solve of the stacked
//! system [L; trace-row] x = [0; 1]: the trace row pins the overall scale,
//! and for a one-dimensional kernel the solution is exactly the steady
//! state with unit trace. The smallest singular value of the stacked
//! matrix doubles as the kernel-degeneracy check (it collapses to zero
//! precisely when L has a second independent null direction the trace row
//! cannot pin).

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::linalg::{self, solve, ComplexMatrix};
use crate::model::DensityMatrix;

use super::Superoperator;

/// Residual bound for accepting a direct null-space solution.
pub const NULLSPACE_RESIDUAL_TOL: f64 = 1e-10;
/// Residual bound for accepting the long-time integration fallback.
pub const FALLBACK_RESIDUAL_TOL: f64 = 1e-9;
/// Relative threshold below which a second small singular value marks a
/// degenerate kernel.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Steady state of a generator: solves L(ρ) = 0 with unit trace.
///
/// A degenerate kernel (or a direct solution failing the residual or
/// positivity checks) falls back to long-time integration from the
/// maximally mixed state; if that also fails to converge the call returns
/// `DegenerateKernel`.
pub fn steady_state(l: &Superoperator) -> Result<DensityMatrix> {
    let d = l.hilbert_dim();
    let n2 = l.matrix().rows();

    // Stack L with the trace functional row.
    let mut stacked = ComplexMatrix::zeros(n2 + 1, n2);
    for i in 0..n2 {
        for j in 0..n2 {
            stacked.set(i, j, l.matrix().get(i, j));
        }
    }
    for j in 0..d {
        stacked.set(n2, j * d + j, Complex64::new(1.0, 0.0));
    }
    let mut rhs = vec![Complex64::new(0.0, 0.0); n2 + 1];
    rhs[n2] = Complex64::new(1.0, 0.0);

    let ls = solve::qr_least_squares(&stacked, &rhs);
    let sigma_small = solve::smallest_singular_estimate(&ls.r);
    let degenerate = sigma_small < DEGENERACY_TOL * l.matrix().frobenius_norm();

    if !degenerate {
        if let Some(rho) = accept(l, &ls.solution, d, NULLSPACE_RESIDUAL_TOL) {
            return Ok(rho);
        }
    }
    fallback_integration(l, d)
}

/// Hermitize, normalize, and verify a candidate null vector. Returns None
/// if the candidate misses the residual bound or is not a density matrix.
fn accept(l: &Superoperator, x: &[Complex64], d: usize, residual_tol: f64) -> Option<DensityMatrix> {
    let raw = linalg::unvectorize(x, d);
    let herm = raw.hermitize();
    let trace = herm.trace().re;
    if !trace.is_finite() || trace.abs() < 1e-6 {
        return None;
    }
    let rho = herm.scale_re(1.0 / trace);
    let residual = l.matrix().matvec(&linalg::vectorize(&rho));
    let residual_max = residual.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !residual_max.is_finite() || residual_max > residual_tol {
        return None;
    }
    DensityMatrix::new(rho).ok()
}

/// Long-time RK4 integration from the maximally mixed state until
/// |L(ρ)|_max <= 1e-9.
fn fallback_integration(l: &Superoperator, d: usize) -> Result<DensityMatrix> {
    let m = l.matrix();
    // Max row sum bounds the spectral radius; keeps RK4 comfortably stable.
    let mut row_sum_max: f64 = 0.0;
    for i in 0..m.rows() {
        let s: f64 = (0..m.cols()).map(|j| m.get(i, j).norm()).sum();
        row_sum_max = row_sum_max.max(s);
    }
    let dt = 0.5 / row_sum_max.max(1e-12);

    let mixed = DensityMatrix::from_matrix_unchecked(
        ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
    );
    let chunk_t = 200.0 * dt;
    let mut state = mixed;
    for _ in 0..2000 {
        let traj = super::evolve(l, &state, chunk_t, dt, 200)?;
        state = traj.last().clone();
        let residual = m.matvec(&linalg::vectorize(state.matrix()));
        let residual_max = residual.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if residual_max <= FALLBACK_RESIDUAL_TOL {
            return DensityMatrix::new(state.matrix().clone());
        }
    }
    Err(SimError::DegenerateKernel(format!(
        "no steady state within residual {FALLBACK_RESIDUAL_TOL:e} after fallback integration"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, Generator};
    use crate::model::{thermal_product_state, BathSpec, ChainSpec};

    #[test]
    fn uncoupled_local_chain_settles_to_thermal_product() {
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.0, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![1.0, 1.1], vec![0.05, 0.05]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let ss = steady_state(gen.liouvillian()).unwrap();
        let thermal = thermal_product_state(&spec, &baths).unwrap();
        assert!(ss.distance(&thermal).unwrap() < 1e-8);
    }

    #[test]
    fn uncoupled_global_chain_settles_to_thermal_product() {
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.0, 0.0, 0.0).unwrap();
        let baths = BathSpec::global(vec![1.0, 1.1], vec![1e-3, 2e-3], None).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let ss = steady_state(gen.liouvillian()).unwrap();
        let thermal = thermal_product_state(&spec, &baths).unwrap();
        assert!(ss.distance(&thermal).unwrap() < 1e-8);
    }

    #[test]
    fn single_spin_global_steady_state_is_gibbs() {
        let spec = ChainSpec::uniform(vec![1.2], 0.0, 0.0, 0.0, 0.0).unwrap();
        let baths = BathSpec::global(vec![0.9], vec![5e-3], None).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let ss = steady_state(gen.liouvillian()).unwrap();
        let gibbs = thermal_product_state(&spec, &baths).unwrap();
        assert!(ss.distance(&gibbs).unwrap() < 1e-8);
    }

    #[test]
    fn steady_state_agrees_with_long_time_integration() {
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.02, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![1.0, 1.1], vec![0.05, 0.05]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let ss = steady_state(gen.liouvillian()).unwrap();
        let rho0 = thermal_product_state(&spec, &baths).unwrap();
        let t_end = 1000.0 / 0.05;
        let traj = evolve(gen.liouvillian(), &rho0, t_end, gen.default_dt(), 5000).unwrap();
        assert!(ss.distance(traj.last()).unwrap() < 1e-6);
        // The direct solve leaves essentially no residual.
        let res = gen
            .liouvillian()
            .matrix()
            .matvec(&linalg::vectorize(ss.matrix()));
        assert!(res.iter().map(|z| z.norm()).fold(0.0, f64::max) <= 1e-10);
    }

    #[test]
    fn coupled_chain_cools_spin_one() {
        // XX coupling with a field bias: spin 1's excited population drops
        // below its bare thermal value.
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.02, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![1.0, 1.1], vec![0.05, 0.05]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let ss = steady_state(gen.liouvillian()).unwrap();
        let reduced = ss.reduced(1).unwrap();
        let bare = crate::model::thermal_population(1.1, 1.0);
        assert!(reduced.get(0, 0).re < bare);
    }
}
