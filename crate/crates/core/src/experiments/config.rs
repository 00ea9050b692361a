// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! TOML experiment configuration.
//!
//! Unknown keys are hard errors everywhere: a typo in a physics parameter
//! must fail loudly instead of silently running the wrong experiment.

use serde::{Deserialize, Serialize};

use crate::disorder::DisorderSpec;
use crate::dynamics::MasterEquation;
use crate::error::{Result, SimError};
use crate::model::{BathSpec, Bond, ChainSpec, CouplingFamily};

/// Experiment kinds the runner understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Trajectory,
    Sweep,
    QuenchedSweep,
    Scatter,
}

impl ExperimentKind {
    pub fn label(self) -> &'static str {
        match self {
            ExperimentKind::Trajectory => "trajectory",
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::QuenchedSweep => "quenched_sweep",
            ExperimentKind::Scatter => "scatter",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub mode: MasterEquation,
    pub seed: u64,
    /// Worker threads; 0 picks the runtime default.
    #[serde(default)]
    pub workers: usize,
    /// 1-based spin whose refrigeration is reported.
    #[serde(default = "default_target_site")]
    pub target_site: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSection>,
    pub baths: BathSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<TrajectorySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scatter: Option<ScatterSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

fn default_target_site() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    /// Per-site field strengths; the length sets the number of sites.
    pub fields: Vec<f64>,
    #[serde(default)]
    pub gamma: f64,
    /// Uniform couplings on the default topology (single bond for two
    /// sites, ring for three or more). Exactly one of `couplings` and
    /// `bonds` must be present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<CouplingsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bonds: Option<Vec<BondSection>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingsSection {
    #[serde(default)]
    pub j_xy: f64,
    #[serde(default)]
    pub j_z: f64,
    #[serde(default)]
    pub j_dm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BondSection {
    /// 1-based [i, j]; order matters for the antisymmetric DM term.
    pub sites: [usize; 2],
    #[serde(default)]
    pub j_xy: f64,
    #[serde(default)]
    pub j_z: f64,
    #[serde(default)]
    pub j_dm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    pub temperatures: Vec<f64>,
    /// Per-site Γ_i; required in local mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<Vec<f64>>,
    /// Per-site α_i; required in global mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    /// Ohmic cutoff Ω; defaults to 10 x spectral radius of H_S.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectorySection {
    pub t_end: f64,
    /// Integrator step; omitted or 0 selects the generator default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    pub sample_every: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: CouplingFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: GridSpacing,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderSection {
    pub target: CouplingFamily,
    pub sigma: f64,
    pub realizations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScatterFamily {
    /// Random h_i, Γ_i, J_xy, J_z.
    Xxz,
    /// Random h_i, Γ_i, J_xy, J_z, J_dm.
    XxzDm,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterSection {
    pub samples: usize,
    pub family: ScatterFamily,
    /// Uniform sampling range of every field h_i.
    #[serde(default = "default_field_range")]
    pub field_range: [f64; 2],
    /// Uniform sampling range of every rate Γ_i.
    #[serde(default = "default_unit_tenth_range")]
    pub rate_range: [f64; 2],
    /// Uniform sampling range of each shared coupling draw.
    #[serde(default = "default_unit_tenth_range")]
    pub coupling_range: [f64; 2],
}

fn default_field_range() -> [f64; 2] {
    [1.1, 5.0]
}

fn default_unit_tenth_range() -> [f64; 2] {
    [0.0, 0.1]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: String,
}

impl ExperimentConfig {
    /// Parse and validate a TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| SimError::ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical TOML form; also the input of the config hash.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// FNV-1a hash of the canonical form, as fixed-width hex. Worker
    /// count and output path are excluded: they must not affect results,
    /// so they must not affect the hash stamped into the CSV either.
    pub fn hash(&self) -> String {
        let mut canon = self.clone();
        canon.workers = 0;
        canon.output = None;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in canon.to_toml().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }

    /// Kind-specific structural validation.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(SimError::ConfigError(msg));
        if self.target_site < 1 {
            return fail("target_site is 1-based".into());
        }
        let need = |present: bool, name: &str, wanted: bool| -> Result<()> {
            if wanted && !present {
                Err(SimError::ConfigError(format!(
                    "kind = \"{}\" requires a [{name}] section",
                    self.kind.label()
                )))
            } else if !wanted && present {
                Err(SimError::ConfigError(format!(
                    "kind = \"{}\" does not accept a [{name}] section",
                    self.kind.label()
                )))
            } else {
                Ok(())
            }
        };
        match self.kind {
            ExperimentKind::Trajectory => {
                need(self.chain.is_some(), "chain", true)?;
                need(self.trajectory.is_some(), "trajectory", true)?;
                need(self.sweep.is_some(), "sweep", false)?;
                need(self.disorder.is_some(), "disorder", false)?;
                need(self.scatter.is_some(), "scatter", false)?;
            }
            ExperimentKind::Sweep => {
                need(self.chain.is_some(), "chain", true)?;
                need(self.sweep.is_some(), "sweep", true)?;
                need(self.trajectory.is_some(), "trajectory", false)?;
                need(self.disorder.is_some(), "disorder", false)?;
                need(self.scatter.is_some(), "scatter", false)?;
            }
            ExperimentKind::QuenchedSweep => {
                need(self.chain.is_some(), "chain", true)?;
                need(self.sweep.is_some(), "sweep", true)?;
                need(self.disorder.is_some(), "disorder", true)?;
                need(self.trajectory.is_some(), "trajectory", false)?;
                need(self.scatter.is_some(), "scatter", false)?;
            }
            ExperimentKind::Scatter => {
                need(self.scatter.is_some(), "scatter", true)?;
                need(self.chain.is_some(), "chain", false)?;
                need(self.trajectory.is_some(), "trajectory", false)?;
                need(self.sweep.is_some(), "sweep", false)?;
                need(self.disorder.is_some(), "disorder", false)?;
                if self.mode != MasterEquation::Local {
                    return fail("scatter sampling draws local rates; mode must be \"local\"".into());
                }
                if self.baths.rates.is_some() || self.baths.alphas.is_some() {
                    return fail("scatter samples its own rates; omit baths.rates/alphas".into());
                }
                let s = self.scatter.as_ref().unwrap();
                if s.samples == 0 {
                    return fail("scatter.samples must be >= 1".into());
                }
                for (name, r) in [
                    ("field_range", s.field_range),
                    ("rate_range", s.rate_range),
                    ("coupling_range", s.coupling_range),
                ] {
                    if !(r[0] <= r[1]) || !r[0].is_finite() || !r[1].is_finite() {
                        return fail(format!("scatter.{name} must be a finite [lo, hi] pair"));
                    }
                }
            }
        }
        if let Some(chain) = &self.chain {
            match (&chain.couplings, &chain.bonds) {
                (Some(_), Some(_)) => {
                    return fail("give either chain.couplings or chain.bonds, not both".into())
                }
                (None, None) => {
                    return fail("one of chain.couplings or chain.bonds is required".into())
                }
                _ => {}
            }
        }
        if let Some(s) = &self.sweep {
            match (&s.values, &s.grid) {
                (Some(_), Some(_)) => {
                    return fail("give either sweep.values or sweep.grid, not both".into())
                }
                (None, None) => return fail("one of sweep.values or sweep.grid is required".into()),
                (Some(v), None) => {
                    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
                        return fail("sweep.values must be non-empty and finite".into());
                    }
                }
                (None, Some(g)) => {
                    if g.points == 0 || !g.start.is_finite() || !g.stop.is_finite() {
                        return fail("sweep.grid needs finite bounds and points >= 1".into());
                    }
                    if g.spacing == GridSpacing::Log && (g.start <= 0.0 || g.stop <= 0.0) {
                        return fail("log spacing needs positive bounds".into());
                    }
                }
            }
        }
        if let Some(d) = &self.disorder {
            if d.realizations == 0 || !(d.sigma >= 0.0) || !d.sigma.is_finite() {
                return fail("disorder needs realizations >= 1 and sigma >= 0".into());
            }
        }
        match self.mode {
            MasterEquation::Local => {
                if self.kind != ExperimentKind::Scatter && self.baths.rates.is_none() {
                    return fail("local mode requires baths.rates".into());
                }
            }
            MasterEquation::Global => {
                if self.baths.alphas.is_none() {
                    return fail("global mode requires baths.alphas".into());
                }
            }
        }
        Ok(())
    }

    /// Build the domain chain specification.
    pub fn chain_spec(&self) -> Result<ChainSpec> {
        let chain = self
            .chain
            .as_ref()
            .ok_or_else(|| SimError::ConfigError("no [chain] section".into()))?;
        match (&chain.couplings, &chain.bonds) {
            (Some(c), None) => {
                ChainSpec::uniform(chain.fields.clone(), chain.gamma, c.j_xy, c.j_z, c.j_dm)
            }
            (None, Some(bonds)) => {
                let bonds = bonds
                    .iter()
                    .map(|b| Bond {
                        i: b.sites[0],
                        j: b.sites[1],
                        j_xy: b.j_xy,
                        j_z: b.j_z,
                        j_dm: b.j_dm,
                    })
                    .collect();
                ChainSpec::new(chain.fields.clone(), chain.gamma, bonds)
            }
            _ => Err(SimError::ConfigError(
                "one of chain.couplings or chain.bonds is required".into(),
            )),
        }
    }

    /// Build the domain bath specification.
    pub fn bath_spec(&self) -> Result<BathSpec> {
        let t = self.baths.temperatures.clone();
        match self.mode {
            MasterEquation::Local => {
                let rates = self
                    .baths
                    .rates
                    .clone()
                    .ok_or_else(|| SimError::ConfigError("local mode requires baths.rates".into()))?;
                BathSpec::local(t, rates)
            }
            MasterEquation::Global => {
                let alphas = self.baths.alphas.clone().ok_or_else(|| {
                    SimError::ConfigError("global mode requires baths.alphas".into())
                })?;
                BathSpec::global(t, alphas, self.baths.cutoff)
            }
        }
    }

    /// Resolved sweep grid in config order.
    pub fn sweep_values(&self) -> Result<Vec<f64>> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| SimError::ConfigError("no [sweep] section".into()))?;
        if let Some(v) = &sweep.values {
            return Ok(v.clone());
        }
        let g = sweep.grid.as_ref().expect("validated");
        if g.points == 1 {
            return Ok(vec![g.start]);
        }
        let n = g.points;
        Ok((0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match g.spacing {
                    GridSpacing::Linear => g.start + f * (g.stop - g.start),
                    GridSpacing::Log => (g.start.ln() + f * (g.stop.ln() - g.start.ln())).exp(),
                }
            })
            .collect())
    }

    /// Disorder spec with the mean filled in per grid point.
    pub fn disorder_spec(&self, mean: f64) -> Result<DisorderSpec> {
        let d = self
            .disorder
            .as_ref()
            .ok_or_else(|| SimError::ConfigError("no [disorder] section".into()))?;
        Ok(DisorderSpec {
            target: d.target,
            mean,
            sigma: d.sigma,
            n_realizations: d.realizations,
            base_seed: self.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_SWEEP: &str = r#"
kind = "sweep"
mode = "local"
seed = 7

[chain]
fields = [1.1, 1.3]

[chain.couplings]
j_xy = 0.02

[baths]
temperatures = [1.0, 1.1]
rates = [0.05, 0.05]

[sweep]
parameter = "j_xy"
grid = { start = 1e-3, stop = 1e-1, points = 5, spacing = "log" }
"#;

    #[test]
    fn minimal_sweep_parses() {
        let cfg = ExperimentConfig::from_toml(MINIMAL_SWEEP).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Sweep);
        let values = cfg.sweep_values().unwrap();
        assert_eq!(values.len(), 5);
        assert!((values[0] - 1e-3).abs() < 1e-15);
        assert!((values[4] - 1e-1).abs() < 1e-12);
        // Log spacing: constant ratio.
        let r = values[1] / values[0];
        for w in values.windows(2) {
            assert!((w[1] / w[0] - r).abs() < 1e-12);
        }
        cfg.chain_spec().unwrap();
        cfg.bath_spec().unwrap();
    }

    #[test]
    fn unknown_keys_are_hard_errors() {
        let bad = MINIMAL_SWEEP.replace("j_xy = 0.02", "j_xy = 0.02\njxx = 0.3");
        assert!(matches!(
            ExperimentConfig::from_toml(&bad),
            Err(SimError::ConfigError(_))
        ));
        let bad = format!("{MINIMAL_SWEEP}\n[extra]\nx = 1\n");
        assert!(ExperimentConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn kind_section_consistency_is_enforced() {
        // A sweep config must not carry a trajectory block.
        let bad = format!("{MINIMAL_SWEEP}\n[trajectory]\nt_end = 10.0\nsample_every = 5\n");
        assert!(ExperimentConfig::from_toml(&bad).is_err());
        // Local mode requires rates.
        let bad = MINIMAL_SWEEP.replace("rates = [0.05, 0.05]", "");
        assert!(ExperimentConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = ExperimentConfig::from_toml(MINIMAL_SWEEP).unwrap();
        let b = ExperimentConfig::from_toml(MINIMAL_SWEEP).unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = ExperimentConfig::from_toml(&MINIMAL_SWEEP.replace("seed = 7", "seed = 8")).unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn toml_roundtrip_preserves_config() {
        let a = ExperimentConfig::from_toml(MINIMAL_SWEEP).unwrap();
        let b = ExperimentConfig::from_toml(&a.to_toml()).unwrap();
        assert_eq!(a.hash(), b.hash());
    }
}
