// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Quenched-disorder engine.
//!
//! One coupling family is drawn per bond from a Gaussian of mean <g> and
//! width σ_g, the full steady-state pipeline runs per realization, and
//! the ensemble mean and standard error of the target spin's heat current
//! and steady temperature are reported. Draws are unrestricted in sign.
//!
//! Reproducibility: realization k uses a ChaCha8 stream derived from
//! (base_seed, k), so the ensemble is independent of scheduling order and
//! worker count; the reduction runs in fixed k order after all
//! realizations complete.


use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{steady_state, Generator, MasterEquation};
use crate::error::{Result, SimError};
use crate::model::{BathSpec, ChainSpec, CouplingFamily};
use crate::observables::{heat_current, local_temperature};

/// Which coupling is random, and how.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderSpec {
    /// The single random coupling family.
    pub target: CouplingFamily,
    /// Ensemble mean <g>.
    pub mean: f64,
    /// Ensemble standard deviation σ_g >= 0.
    pub sigma: f64,
    pub n_realizations: usize,
    pub base_seed: u64,
}

impl DisorderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_realizations < 1 {
            return Err(SimError::InvalidSpec("n_realizations must be >= 1".into()));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() || !self.mean.is_finite() {
            return Err(SimError::InvalidSpec(
                "disorder mean must be finite and sigma >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Ensemble statistics of the target spin's observables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchedStats {
    pub mean_heat_current: f64,
    pub mean_steady_temperature: f64,
    pub stderr_heat_current: f64,
    pub stderr_steady_temperature: f64,
    /// Realizations that produced a valid steady state.
    pub n_effective: usize,
    pub n_realizations: usize,
}

/// One disorder realization: every bond's target coupling is replaced by
/// an independent Gaussian draw. Deterministic in (base_seed, k).
pub fn sample_realization(spec: &ChainSpec, d: &DisorderSpec, k: u64) -> ChainSpec {
    if d.sigma == 0.0 {
        return spec.with_uniform_coupling(d.target, d.mean);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(d.base_seed);
    rng.set_stream(k);
    let normal = Normal::new(d.mean, d.sigma).expect("validated sigma");
    let draws: Vec<f64> = spec.bonds().iter().map(|_| normal.sample(&mut rng)).collect();
    spec.with_bond_couplings(d.target, &draws)
}

/// Per-realization outcome used by the quenched reduction.
fn realize(
    spec: &ChainSpec,
    baths: &BathSpec,
    d: &DisorderSpec,
    target_site: usize,
    k: u64,
) -> Option<(f64, f64)> {
    let sampled = sample_realization(spec, d, k);
    let gen = Generator::build(&sampled, baths).ok()?;
    let ss = steady_state(gen.liouvillian()).ok()?;
    let q = heat_current(gen.hamiltonian(), gen.dissipator(target_site), &ss).ok()?;
    let t = local_temperature(&ss, &sampled, target_site).ok()?.temperature;
    Some((q, t))
}

/// Monte-Carlo quenched average of the target spin's heat current and
/// steady temperature. Realizations run in parallel; failed realizations
/// are excluded and counted through `n_effective`.
pub fn quenched_average(
    spec: &ChainSpec,
    baths: &BathSpec,
    d: &DisorderSpec,
    mode: MasterEquation,
    target_site: usize,
) -> Result<QuenchedStats> {
    d.validate()?;
    if mode != MasterEquation::of(baths) {
        return Err(SimError::WrongCouplingModel(format!(
            "requested {mode:?} master equation but the bath coupling selects {:?}",
            MasterEquation::of(baths)
        )));
    }
    if target_site < 1 || target_site > spec.n_sites() {
        return Err(SimError::IndexOutOfRange(format!(
            "target site {target_site} not in 1..={}",
            spec.n_sites()
        )));
    }

    let results: Vec<Option<(f64, f64)>> = (0..d.n_realizations as u64)
        .into_par_iter()
        .map(|k| realize(spec, baths, d, target_site, k))
        .collect();

    // Fixed-order reduction keeps the floating-point sums reproducible.
    let valid: Vec<(f64, f64)> = results.into_iter().flatten().collect();
    let n_effective = valid.len();
    if n_effective == 0 {
        return Err(SimError::AllRealizationsFailed(d.n_realizations));
    }

    // Summation centered on the first value: an ensemble of identical
    // realizations (sigma = 0) averages to exactly that value.
    let n = n_effective as f64;
    let base = valid[0];
    let mean_q = base.0 + valid.iter().map(|v| v.0 - base.0).sum::<f64>() / n;
    let mean_t = base.1 + valid.iter().map(|v| v.1 - base.1).sum::<f64>() / n;
    let (var_q, var_t) = if n_effective > 1 {
        let vq = valid.iter().map(|v| (v.0 - mean_q).powi(2)).sum::<f64>() / (n - 1.0);
        let vt = valid.iter().map(|v| (v.1 - mean_t).powi(2)).sum::<f64>() / (n - 1.0);
        (vq, vt)
    } else {
        (0.0, 0.0)
    };

    Ok(QuenchedStats {
        mean_heat_current: mean_q,
        mean_steady_temperature: mean_t,
        stderr_heat_current: (var_q / n).sqrt(),
        stderr_steady_temperature: (var_t / n).sqrt(),
        n_effective,
        n_realizations: d.n_realizations,
    })
}
