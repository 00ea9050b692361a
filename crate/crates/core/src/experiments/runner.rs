// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Experiment drivers: trajectory integration, (quenched) parameter
//! sweeps, and the uniform-sampling scatter experiment.
//!
//! Every driver is deterministic in (config, seed): per-point work is
//! distributed over a worker pool, results land in index order, and all
//! reductions run sequentially afterwards.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{evolve, steady_state, Generator};
use crate::error::{Result, SimError};
use crate::model::{BathSpec, ChainSpec};
use crate::observables::{heat_current, local_temperature};

use super::config::{ExperimentConfig, ExperimentKind, ScatterFamily};
use super::table::{ResultTable, TableMetadata};

/// Aggregate of one scatter run.
#[derive(Debug, Clone, Copy)]
pub struct ScatterSummary {
    pub n_samples: usize,
    /// Samples whose steady state or observables failed; excluded from
    /// the table but kept in the denominator.
    pub n_failed: usize,
    /// Samples satisfying both refrigeration conditions
    /// (T_target^s < T_target^0 and Qdot_target > 0).
    pub n_refrigerators: usize,
    pub cooling_fraction: f64,
}

/// Output of [`run`]: the table plus the scatter summary when applicable.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: ResultTable,
    pub scatter: Option<ScatterSummary>,
}

/// Environment variable consulted for the worker count when the config
/// (or CLI flag) does not pin one.
pub const WORKERS_ENV: &str = "SPINFRIDGE_WORKERS";

fn resolve_workers(config: &ExperimentConfig) -> usize {
    if config.workers > 0 {
        return config.workers;
    }
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0)
}

/// Run any experiment kind inside its worker pool.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput> {
    config.validate()?;
    let workers = resolve_workers(config);
    let body = || -> Result<RunOutput> {
        match config.kind {
            ExperimentKind::Trajectory => Ok(RunOutput {
                table: run_trajectory(config)?,
                scatter: None,
            }),
            ExperimentKind::Sweep | ExperimentKind::QuenchedSweep => Ok(RunOutput {
                table: run_sweep(config)?,
                scatter: None,
            }),
            ExperimentKind::Scatter => {
                let (table, summary) = run_scatter(config)?;
                Ok(RunOutput {
                    table,
                    scatter: Some(summary),
                })
            }
        }
    };
    if workers == 0 {
        body()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SimError::ConfigError(format!("worker pool: {e}")))?;
        pool.install(body)
    }
}

fn metadata(config: &ExperimentConfig, wall_time_s: f64) -> TableMetadata {
    TableMetadata {
        config_hash: config.hash(),
        seed: config.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_s,
    }
}

/// Integrate the configured chain from its thermal product state and
/// sample per-spin temperatures and heat currents along the way.
pub fn run_trajectory(config: &ExperimentConfig) -> Result<ResultTable> {
    let started = std::time::Instant::now();
    let spec = config.chain_spec()?;
    let baths = config.bath_spec()?;
    let section = config
        .trajectory
        .ok_or_else(|| SimError::ConfigError("no [trajectory] section".into()))?;

    let gen = Generator::build(&spec, &baths)?;
    let rho0 = crate::model::thermal_product_state(&spec, &baths)?;
    let dt = match section.dt {
        Some(dt) if dt > 0.0 => dt,
        _ => gen.default_dt(),
    };
    let traj = evolve(gen.liouvillian(), &rho0, section.t_end, dt, section.sample_every)?;

    let n = spec.n_sites();
    let mut columns = vec!["t".to_string()];
    columns.extend((1..=n).map(|s| format!("T_{s}")));
    columns.extend((1..=n).map(|s| format!("Qdot_{s}")));

    let mut table = ResultTable::new(columns, metadata(config, 0.0));
    for (t, state) in traj.times().iter().zip(traj.states()) {
        let mut row = Vec::with_capacity(1 + 2 * n);
        row.push(*t);
        for site in 1..=n {
            row.push(local_temperature(state, &spec, site)?.temperature);
        }
        for site in 1..=n {
            row.push(heat_current(gen.hamiltonian(), gen.dissipator(site), state)?);
        }
        table.push_row(row);
    }
    finish(table, config, started)
}

/// Steady-state observables over the sweep grid; adds ensemble standard
/// errors when a disorder block is present.
pub fn run_sweep(config: &ExperimentConfig) -> Result<ResultTable> {
    let started = std::time::Instant::now();
    let spec = config.chain_spec()?;
    let baths = config.bath_spec()?;
    let values = config.sweep_values()?;
    let parameter = config.sweep.as_ref().expect("validated").parameter;
    let ts = config.target_site;
    if ts > spec.n_sites() {
        return Err(SimError::IndexOutOfRange(format!(
            "target site {ts} not in 1..={}",
            spec.n_sites()
        )));
    }

    let quenched = config.kind == ExperimentKind::QuenchedSweep;
    let mut columns = vec![
        "g".to_string(),
        format!("Qdot_{ts}"),
        format!("T{ts}_s"),
    ];
    if quenched {
        columns.push(format!("Qdot_{ts}_err"));
        columns.push(format!("T{ts}_s_err"));
        columns.push("n_effective".to_string());
    }
    let mut table = ResultTable::new(columns, metadata(config, 0.0));

    if quenched {
        // Grid points run sequentially; the realizations inside each
        // quenched average are the parallel unit.
        for &g in &values {
            let d = config.disorder_spec(g)?;
            let stats =
                crate::disorder::quenched_average(&spec, &baths, &d, config.mode, ts)?;
            table.push_row(vec![
                g,
                stats.mean_heat_current,
                stats.mean_steady_temperature,
                stats.stderr_heat_current,
                stats.stderr_steady_temperature,
                stats.n_effective as f64,
            ]);
        }
    } else {
        let rows: Vec<Result<(f64, f64)>> = values
            .par_iter()
            .map(|&g| {
                let spec_g = spec.with_uniform_coupling(parameter, g);
                let gen = Generator::build(&spec_g, &baths)?;
                let ss = steady_state(gen.liouvillian())?;
                let q = heat_current(gen.hamiltonian(), gen.dissipator(ts), &ss)?;
                let t = local_temperature(&ss, &spec_g, ts)?.temperature;
                Ok((q, t))
            })
            .collect();
        for (&g, row) in values.iter().zip(rows) {
            let (q, t) = row?;
            table.push_row(vec![g, q, t]);
        }
    }
    finish(table, config, started)
}

/// One scatter draw; `None` marks a failed sample.
fn scatter_sample(
    config: &ExperimentConfig,
    k: u64,
) -> Option<(f64, f64, f64)> {
    let section = config.scatter.as_ref().expect("validated");
    let temps = &config.baths.temperatures;
    let n = temps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(k);
    let mut draw = |range: [f64; 2]| -> f64 {
        if range[0] == range[1] {
            range[0]
        } else {
            rng.random_range(range[0]..range[1])
        }
    };

    // Fixed draw order: fields, rates, then the shared couplings.
    let fields: Vec<f64> = (0..n).map(|_| draw(section.field_range)).collect();
    let rates: Vec<f64> = (0..n).map(|_| draw(section.rate_range)).collect();
    let j_xy = draw(section.coupling_range);
    let j_z = draw(section.coupling_range);
    let j_dm = match section.family {
        ScatterFamily::Xxz => 0.0,
        ScatterFamily::XxzDm => draw(section.coupling_range),
    };

    let spec = ChainSpec::uniform(fields, 0.0, j_xy, j_z, j_dm).ok()?;
    let baths = BathSpec::local(temps.clone(), rates).ok()?;
    let gen = Generator::build(&spec, &baths).ok()?;
    let ss = steady_state(gen.liouvillian()).ok()?;
    let ts = config.target_site;
    let t_steady = local_temperature(&ss, &spec, ts).ok()?.temperature;
    let q = heat_current(gen.hamiltonian(), gen.dissipator(ts), &ss).ok()?;
    Some((t_steady, baths.temperature(ts) - t_steady, q))
}

/// Uniformly sampled refrigerator census: solves `samples` random chains
/// and reports the fraction operating as refrigerators for the target
/// spin (steady temperature below the bath temperature AND positive heat
/// current; both conditions are logged per point).
pub fn run_scatter(config: &ExperimentConfig) -> Result<(ResultTable, ScatterSummary)> {
    let started = std::time::Instant::now();
    let section = config
        .scatter
        .as_ref()
        .ok_or_else(|| SimError::ConfigError("no [scatter] section".into()))?;
    let ts = config.target_site;
    if ts > config.baths.temperatures.len() {
        return Err(SimError::IndexOutOfRange(format!(
            "target site {ts} not in 1..={}",
            config.baths.temperatures.len()
        )));
    }

    let samples: Vec<Option<(f64, f64, f64)>> = (0..section.samples as u64)
        .into_par_iter()
        .map(|k| scatter_sample(config, k))
        .collect();

    let mut table = ResultTable::new(
        vec![
            "k".to_string(),
            format!("T{ts}_s"),
            format!("dT_{ts}"),
            format!("Qdot_{ts}"),
            "cooled".to_string(),
            "current_positive".to_string(),
        ],
        metadata(config, 0.0),
    );
    let mut n_failed = 0usize;
    let mut n_refrigerators = 0usize;
    for (k, sample) in samples.iter().enumerate() {
        match sample {
            None => n_failed += 1,
            Some((t_steady, dt, q)) => {
                let cooled = *dt > 0.0;
                let positive = *q > 0.0;
                if cooled && positive {
                    n_refrigerators += 1;
                }
                table.push_row(vec![
                    k as f64,
                    *t_steady,
                    *dt,
                    *q,
                    cooled as u8 as f64,
                    positive as u8 as f64,
                ]);
            }
        }
    }
    let summary = ScatterSummary {
        n_samples: section.samples,
        n_failed,
        n_refrigerators,
        cooling_fraction: n_refrigerators as f64 / section.samples as f64,
    };
    table.push_trailer("cooling_fraction", format!("{:.11e}", summary.cooling_fraction));
    table.push_trailer("n_failed", summary.n_failed.to_string());
    let table = finish(table, config, started)?;
    Ok((table, summary))
}

fn finish(
    mut table: ResultTable,
    config: &ExperimentConfig,
    started: std::time::Instant,
) -> Result<ResultTable> {
    let meta = metadata(config, started.elapsed().as_secs_f64());
    table = table.with_metadata(meta);
    Ok(table)
}
