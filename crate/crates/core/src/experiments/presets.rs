// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Built-in experiment presets.
//!
//! Each preset is a complete configuration for one of the canned studies:
//! two-spin trajectories (fig2*), two-spin sweeps (fig3*), three-spin
//! local-ME sweeps (fig4*), the refrigerator census (fig5*), quenched
//! three-spin sweeps (fig6*), and the strong-coupling global-ME sweeps
//! (fig7*). Presets are ordinary configs; dump one with
//! `spinfridge presets --dump NAME` to use it as a starting point.

use crate::dynamics::MasterEquation;
use crate::model::CouplingFamily;

use super::config::{
    BathSection, ChainSection, CouplingsSection, DisorderSection, ExperimentConfig,
    ExperimentKind, GridSection, GridSpacing, ScatterFamily, ScatterSection, SweepSection,
    TrajectorySection,
};

/// Names and one-line summaries of every preset.
pub fn preset_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("fig2", "two-spin XX trajectory, field bias, local ME"),
        ("fig2_dm", "two-spin XX+DM trajectory, local ME"),
        ("fig2_flat", "two-spin XX trajectory with equal bath temperatures"),
        ("fig3", "two-spin ordered J_xy sweep, local ME"),
        ("fig3_dm", "two-spin ordered J_dm sweep at J_xy = 0.02, local ME"),
        ("fig3q", "two-spin quenched J_xy sweep, sigma = 0.02, 2000 realizations"),
        ("fig3q_dm", "two-spin quenched J_dm sweep, sigma = 0.02, 2000 realizations"),
        ("fig4", "three-spin ring ordered J_xy sweep at J_z = 0.019, local ME"),
        ("fig4_jz", "three-spin ring ordered J_z sweep at J_xy = 0.073, local ME"),
        ("fig4_jdm", "three-spin ring ordered J_dm sweep at J_xy = 0.073, local ME"),
        ("fig5", "refrigerator census: 1e4 uniform XXZ samples, local ME"),
        ("fig5_dm", "refrigerator census with an added DM coupling draw"),
        ("fig6", "three-spin quenched J_xy sweep, sigma = 0.05, 2000 realizations"),
        ("fig6_jdm", "three-spin quenched J_dm sweep, sigma = 0.05, 2000 realizations"),
        ("fig7", "three-spin global-ME J_z sweep at J_xy = -0.4"),
        ("fig7_jxy", "three-spin global-ME J_xy sweep at J_z = -0.55"),
        ("fig7_threshold", "global-ME J_z sweep at J_xy = -0.55 (cooling threshold)"),
        ("fig7q", "three-spin global-ME quenched J_z sweep, 500 realizations"),
    ]
}

/// Look up a preset by name.
pub fn preset(name: &str) -> Option<ExperimentConfig> {
    let cfg = match name {
        "fig2" => two_spin_trajectory(0.02, 0.0, [1.0, 1.1]),
        "fig2_dm" => two_spin_trajectory(0.02, 0.02, [1.0, 1.1]),
        "fig2_flat" => two_spin_trajectory(0.02, 0.0, [1.0, 1.0]),
        "fig3" => two_spin_sweep(CouplingFamily::JXy, 0.0, None),
        "fig3_dm" => two_spin_sweep(CouplingFamily::JDm, 0.02, None),
        "fig3q" => two_spin_sweep(CouplingFamily::JXy, 0.0, Some(0.02)),
        "fig3q_dm" => two_spin_sweep(CouplingFamily::JDm, 0.02, Some(0.02)),
        "fig4" => ring_local_sweep(CouplingFamily::JXy, 0.0, 0.019, 0.0, None),
        "fig4_jz" => ring_local_sweep(CouplingFamily::JZ, 0.073, 0.0, 0.0, None),
        "fig4_jdm" => ring_local_sweep(CouplingFamily::JDm, 0.073, 0.0, 0.0, None),
        "fig5" => scatter(ScatterFamily::Xxz),
        "fig5_dm" => scatter(ScatterFamily::XxzDm),
        "fig6" => ring_local_sweep(CouplingFamily::JXy, 0.0, 0.019, 0.0, Some(0.05)),
        "fig6_jdm" => ring_local_sweep(CouplingFamily::JDm, 0.073, 0.0, 0.0, Some(0.05)),
        "fig7" => ring_global_sweep(CouplingFamily::JZ, -0.4, grid(-0.8, 0.0, 17), None),
        "fig7_jxy" => ring_global_sweep(CouplingFamily::JXy, -0.55, grid(-0.65, -0.05, 13), None),
        "fig7_threshold" => ring_global_sweep(CouplingFamily::JZ, -0.55, grid(-0.8, 0.0, 17), None),
        "fig7q" => ring_global_sweep(CouplingFamily::JZ, -0.4, grid(-0.8, 0.0, 9), Some((0.05, 500))),
        _ => return None,
    };
    Some(cfg)
}

fn grid(start: f64, stop: f64, points: usize) -> GridSection {
    GridSection {
        start,
        stop,
        points,
        spacing: GridSpacing::Linear,
    }
}

fn log_grid(start: f64, stop: f64, points: usize) -> GridSection {
    GridSection {
        start,
        stop,
        points,
        spacing: GridSpacing::Log,
    }
}

fn base(kind: ExperimentKind, mode: MasterEquation, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        kind,
        mode,
        seed,
        workers: 0,
        target_site: 1,
        chain: None,
        baths: BathSection {
            temperatures: Vec::new(),
            rates: None,
            alphas: None,
            cutoff: None,
        },
        trajectory: None,
        sweep: None,
        disorder: None,
        scatter: None,
        output: None,
    }
}

fn two_spin_chain(j_xy: f64, j_dm: f64) -> ChainSection {
    ChainSection {
        fields: vec![1.1, 1.3],
        gamma: 0.0,
        couplings: Some(CouplingsSection {
            j_xy,
            j_z: 0.0,
            j_dm,
        }),
        bonds: None,
    }
}

fn two_spin_trajectory(j_xy: f64, j_dm: f64, temperatures: [f64; 2]) -> ExperimentConfig {
    let mut cfg = base(ExperimentKind::Trajectory, MasterEquation::Local, 1002);
    cfg.chain = Some(two_spin_chain(j_xy, j_dm));
    cfg.baths = BathSection {
        temperatures: temperatures.to_vec(),
        rates: Some(vec![0.05, 0.05]),
        alphas: None,
        cutoff: None,
    };
    cfg.trajectory = Some(TrajectorySection {
        t_end: 400.0,
        dt: None,
        sample_every: 40,
    });
    cfg
}

fn two_spin_sweep(
    parameter: CouplingFamily,
    j_xy_fixed: f64,
    sigma: Option<f64>,
) -> ExperimentConfig {
    let quenched = sigma.is_some();
    let kind = if quenched {
        ExperimentKind::QuenchedSweep
    } else {
        ExperimentKind::Sweep
    };
    let mut cfg = base(kind, MasterEquation::Local, 1003);
    cfg.chain = Some(two_spin_chain(j_xy_fixed, 0.0));
    cfg.baths = BathSection {
        temperatures: vec![1.0, 1.1],
        rates: Some(vec![0.05, 0.05]),
        alphas: None,
        cutoff: None,
    };
    cfg.sweep = Some(SweepSection {
        parameter,
        values: None,
        grid: Some(log_grid(1e-3, 1e-1, 11)),
    });
    if let Some(sigma) = sigma {
        cfg.disorder = Some(DisorderSection {
            target: parameter,
            sigma,
            realizations: 2000,
        });
    }
    cfg
}

fn ring_local_sweep(
    parameter: CouplingFamily,
    j_xy_fixed: f64,
    j_z_fixed: f64,
    j_dm_fixed: f64,
    sigma: Option<f64>,
) -> ExperimentConfig {
    let quenched = sigma.is_some();
    let kind = if quenched {
        ExperimentKind::QuenchedSweep
    } else {
        ExperimentKind::Sweep
    };
    let seed = if quenched { 1006 } else { 1004 };
    let mut cfg = base(kind, MasterEquation::Local, seed);
    cfg.chain = Some(ChainSection {
        fields: vec![1.11, 2.82, 3.65],
        gamma: 0.0,
        couplings: Some(CouplingsSection {
            j_xy: j_xy_fixed,
            j_z: j_z_fixed,
            j_dm: j_dm_fixed,
        }),
        bonds: None,
    });
    cfg.baths = BathSection {
        temperatures: vec![1.0, 2.0, 3.0],
        rates: Some(vec![0.0639, 0.0984, 0.0673]),
        alphas: None,
        cutoff: None,
    };
    let points = if quenched { 8 } else { 15 };
    cfg.sweep = Some(SweepSection {
        parameter,
        values: None,
        grid: Some(log_grid(1e-3, 1e-1, points)),
    });
    if let Some(sigma) = sigma {
        cfg.disorder = Some(DisorderSection {
            target: parameter,
            sigma,
            realizations: 2000,
        });
    }
    cfg
}

fn scatter(family: ScatterFamily) -> ExperimentConfig {
    let mut cfg = base(ExperimentKind::Scatter, MasterEquation::Local, 1005);
    cfg.baths = BathSection {
        temperatures: vec![1.0, 2.0, 3.0],
        rates: None,
        alphas: None,
        cutoff: None,
    };
    cfg.scatter = Some(ScatterSection {
        samples: 10_000,
        family,
        field_range: [1.1, 5.0],
        rate_range: [0.0, 0.1],
        coupling_range: [0.0, 0.1],
    });
    cfg
}

fn ring_global_sweep(
    parameter: CouplingFamily,
    fixed_other: f64,
    grid: GridSection,
    disorder: Option<(f64, usize)>,
) -> ExperimentConfig {
    let kind = if disorder.is_some() {
        ExperimentKind::QuenchedSweep
    } else {
        ExperimentKind::Sweep
    };
    let mut cfg = base(kind, MasterEquation::Global, 1007);
    let (j_xy, j_z) = match parameter {
        CouplingFamily::JZ => (fixed_other, 0.0),
        CouplingFamily::JXy => (0.0, fixed_other),
        CouplingFamily::JDm => (fixed_other, 0.0),
    };
    cfg.chain = Some(ChainSection {
        fields: vec![0.1, 1.5, 1.4],
        gamma: 0.0,
        couplings: Some(CouplingsSection { j_xy, j_z, j_dm: 0.0 }),
        bonds: None,
    });
    cfg.baths = BathSection {
        temperatures: vec![1.0, 2.0, 3.0],
        rates: None,
        alphas: Some(vec![1e-4, 1e-3, 1e-2]),
        cutoff: None,
    };
    cfg.sweep = Some(SweepSection {
        parameter,
        values: None,
        grid: Some(grid),
    });
    if let Some((sigma, realizations)) = disorder {
        cfg.disorder = Some(DisorderSection {
            target: parameter,
            sigma,
            realizations,
        });
    }
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates_and_roundtrips() {
        for (name, _) in preset_names() {
            let cfg = preset(name).unwrap_or_else(|| panic!("missing preset {name}"));
            cfg.validate().unwrap_or_else(|e| panic!("preset {name}: {e}"));
            let text = cfg.to_toml();
            let back = ExperimentConfig::from_toml(&text)
                .unwrap_or_else(|e| panic!("preset {name} does not roundtrip: {e}"));
            assert_eq!(cfg.hash(), back.hash(), "hash drift in {name}");
        }
    }

    #[test]
    fn unknown_preset_is_none() {
        assert!(preset("fig8").is_none());
    }

    #[test]
    fn fig_presets_carry_their_caption_parameters() {
        let fig4 = preset("fig4").unwrap();
        let chain = fig4.chain.unwrap();
        assert_eq!(chain.fields, vec![1.11, 2.82, 3.65]);
        assert_eq!(fig4.baths.rates.as_deref(), Some(&[0.0639, 0.0984, 0.0673][..]));
        assert_eq!(fig4.baths.temperatures, vec![1.0, 2.0, 3.0]);

        let fig7 = preset("fig7").unwrap();
        let chain = fig7.chain.unwrap();
        assert_eq!(chain.fields, vec![0.1, 1.5, 1.4]);
        assert_eq!(chain.couplings.unwrap().j_xy, -0.4);
        assert_eq!(fig7.baths.alphas.as_deref(), Some(&[1e-4, 1e-3, 1e-2][..]));
    }
}
