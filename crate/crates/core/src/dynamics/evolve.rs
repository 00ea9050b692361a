// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step RK4 integration of dρ/dt = L(ρ) on the vectorized state.

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::linalg::{self, ComplexMatrix};
use crate::model::{DensityMatrix, DM_HERMITICITY_TOL, DM_TRACE_TOL};

use super::Superoperator;

/// Positivity slack allowed on sampled states before the step size is
/// declared too large.
pub const POSITIVITY_TOL: f64 = 1e-6;

/// Time-ordered density matrices produced by [`evolve`].
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn first(&self) -> &DensityMatrix {
        &self.states[0]
    }

    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory never empty")
    }
}

/// Integrate dρ/dt = L(ρ) with classical RK4 and sample every
/// `sample_every` steps (the t = 0 state and the final state are always
/// included). The requested step is rounded so an integer number of steps
/// lands exactly on `t_end`.
///
/// Sampled states are re-Hermitized and trace-renormalized after the
/// drift is checked; integration continues from the corrected state. A
/// sampled state whose spectrum dips below -1e-6 aborts with
/// `StepSizeTooLarge`.
pub fn evolve(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(SimError::DomainError(format!(
            "evolve needs dt > 0 and t_end >= 0, got dt = {dt}, t_end = {t_end}"
        )));
    }
    if sample_every == 0 {
        return Err(SimError::DomainError("sample_every must be >= 1".into()));
    }
    let d = rho0.dim();
    if l.hilbert_dim() != d {
        return Err(SimError::DimensionMismatch(format!(
            "generator on dimension {} applied to state of dimension {d}",
            l.hilbert_dim()
        )));
    }

    let mut times = vec![0.0];
    let mut states = vec![rho0.clone()];
    if t_end == 0.0 {
        return Ok(Trajectory { times, states });
    }

    let n_steps = (t_end / dt).ceil().max(1.0) as usize;
    let dt_eff = t_end / n_steps as f64;
    let m = l.matrix();
    let mut v = linalg::vectorize(rho0.matrix());

    for step in 1..=n_steps {
        rk4_step(m, &mut v, dt_eff);
        if step % sample_every == 0 || step == n_steps {
            let t = step as f64 * dt_eff;
            let corrected = check_and_correct(&v, d, t)?;
            v = linalg::vectorize(corrected.matrix());
            times.push(t);
            states.push(corrected);
        }
    }
    Ok(Trajectory { times, states })
}

fn rk4_step(m: &ComplexMatrix, v: &mut Vec<Complex64>, dt: f64) {
    let k1 = m.matvec(v);
    let k2 = m.matvec(&axpy(v, &k1, dt / 2.0));
    let k3 = m.matvec(&axpy(v, &k2, dt / 2.0));
    let k4 = m.matvec(&axpy(v, &k3, dt));
    for i in 0..v.len() {
        v[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
    }
}

fn axpy(v: &[Complex64], k: &[Complex64], a: f64) -> Vec<Complex64> {
    v.iter().zip(k).map(|(x, y)| x + y * a).collect()
}

/// Validate integration drift at a sample point, then re-Hermitize and
/// renormalize the trace.
fn check_and_correct(v: &[Complex64], d: usize, t: f64) -> Result<DensityMatrix> {
    let raw = linalg::unvectorize(v, d);
    let herm_drift = raw.hermiticity_deviation();
    let trace = raw.trace();
    let trace_drift = (trace - Complex64::new(1.0, 0.0)).norm();
    if !herm_drift.is_finite() || herm_drift > DM_HERMITICITY_TOL || trace_drift > DM_TRACE_TOL {
        return Err(SimError::StepSizeTooLarge {
            t,
            min_eigenvalue: f64::NEG_INFINITY,
        });
    }
    let herm = raw.hermitize();
    let min_eigenvalue = linalg::hermitian_eigenvalues(&herm)?[0];
    if min_eigenvalue < -POSITIVITY_TOL {
        return Err(SimError::StepSizeTooLarge { t, min_eigenvalue });
    }
    let corrected = herm.scale_re(1.0 / trace.re);
    Ok(DensityMatrix::from_matrix_unchecked(corrected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{build_liouvillian, Generator};
    use crate::linalg::ComplexMatrix;
    use crate::model::{thermal_product_state, BathSpec, ChainSpec};

    #[test]
    fn zero_generator_keeps_trajectory_constant() {
        let l = build_liouvillian(&ComplexMatrix::zeros(4, 4), &[]).unwrap();
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.0, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![1.0, 1.1], vec![0.05, 0.05]).unwrap();
        let rho0 = thermal_product_state(&spec, &baths).unwrap();
        let traj = evolve(&l, &rho0, 5.0, 0.01, 100).unwrap();
        for state in traj.states() {
            assert!(state.matrix().approx_eq(rho0.matrix(), 1e-13));
        }
    }

    #[test]
    fn single_spin_relaxes_to_gibbs() {
        let spec = ChainSpec::uniform(vec![1.0], 0.0, 0.0, 0.0, 0.0).unwrap();
        let gamma = 0.05;
        let baths = BathSpec::local(vec![0.8], vec![gamma]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let excited =
            DensityMatrix::new(ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap();
        let traj = evolve(
            gen.liouvillian(),
            &excited,
            20.0 / gamma,
            gen.default_dt(),
            200,
        )
        .unwrap();
        let gibbs = thermal_product_state(&spec, &baths).unwrap();
        assert!(traj.last().distance(&gibbs).unwrap() < 1e-6);
        // Populations move monotonically toward equilibrium.
        let taus: Vec<f64> = traj
            .states()
            .iter()
            .map(|s| s.matrix().get(0, 0).re)
            .collect();
        for w in taus.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn oversized_step_is_reported() {
        let spec = ChainSpec::uniform(vec![1.0], 0.0, 0.0, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![0.8], vec![0.05]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let excited =
            DensityMatrix::new(ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap();
        let result = evolve(gen.liouvillian(), &excited, 2000.0, 100.0, 1);
        assert!(matches!(result, Err(SimError::StepSizeTooLarge { .. })));
    }

    #[test]
    fn trajectory_times_are_strictly_increasing_and_end_exactly() {
        let spec = ChainSpec::uniform(vec![1.1, 1.3], 0.0, 0.02, 0.0, 0.0).unwrap();
        let baths = BathSpec::local(vec![1.0, 1.1], vec![0.05, 0.05]).unwrap();
        let gen = Generator::build(&spec, &baths).unwrap();
        let rho0 = thermal_product_state(&spec, &baths).unwrap();
        let traj = evolve(gen.liouvillian(), &rho0, 7.0, gen.default_dt(), 37).unwrap();
        for w in traj.times().windows(2) {
            assert!(w[1] > w[0]);
        }
        assert_eq!(*traj.times().last().unwrap(), 7.0);
    }
}
