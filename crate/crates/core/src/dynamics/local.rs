// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Weak-coupling (local) dissipators.
//!
//! Each bath couples to its own spin through σ± at the bare transition
//! frequency ω = 2h_i:
//!
//!   D_i(ρ) = Γ_i [ (n+1)(σ⁻ρσ⁺ - {σ⁺σ⁻, ρ}/2) + n(σ⁺ρσ⁻ - {σ⁻σ⁺, ρ}/2) ]
//!
//! with n the Bose-Einstein occupation at (2h_i, T_i). The (n+1) channel
//! empties the high-energy |0> level, so an isolated spin relaxes to its
//! Gibbs state.

use crate::error::{Result, SimError};
use crate::model::{sigma_minus, sigma_plus, site_operator, BathCoupling, BathSpec, ChainSpec};

use super::{gkls_channel, Superoperator, SuperoperatorLabel};

/// Bose-Einstein occupation 1/(e^{ω/T} - 1).
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(SimError::DomainError(format!(
            "bose occupation needs omega > 0, got {omega}"
        )));
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(SimError::DomainError(format!(
            "bose occupation needs T > 0, got {temperature}"
        )));
    }
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// One local dissipator per site.
pub fn local_dissipator(spec: &ChainSpec, baths: &BathSpec) -> Result<Vec<Superoperator>> {
    let rates = match baths.coupling() {
        BathCoupling::Local { rates } => rates,
        BathCoupling::Global { .. } => {
            return Err(SimError::WrongCouplingModel(
                "local dissipator requires LocalCoupling baths".into(),
            ))
        }
    };
    if baths.n_baths() != spec.n_sites() {
        return Err(SimError::DimensionMismatch(format!(
            "{} baths for {} sites",
            baths.n_baths(),
            spec.n_sites()
        )));
    }

    let n_sites = spec.n_sites();
    let mut out = Vec::with_capacity(n_sites);
    for site in 1..=n_sites {
        let n = bose_occupation(2.0 * spec.field(site), baths.temperature(site))?;
        let gamma = rates[site - 1];
        let lower = site_operator(n_sites, site, &sigma_minus())?;
        let raise = site_operator(n_sites, site, &sigma_plus())?;
        let mat = &gkls_channel(&lower, gamma * (n + 1.0)) + &gkls_channel(&raise, gamma * n);
        out.push(Superoperator::new(mat, SuperoperatorLabel::Bath(site)));
    }
    Ok(out)
}
