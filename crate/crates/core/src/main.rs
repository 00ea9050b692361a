// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line interface of the few-spin refrigerator simulator.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinfridge::dynamics::MasterEquation;
use spinfridge::experiments::{self, ExperimentConfig, ExperimentKind};
use spinfridge::SimError;

#[derive(Parser)]
#[command(
    name = "spinfridge",
    version,
    about = "Few-spin quantum refrigerator simulator",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run any experiment config (kind taken from the config).
    Run(RunArgs),
    /// Run an ordered parameter sweep (kind must be "sweep").
    Sweep(RunArgs),
    /// Run the uniform-sampling refrigerator census (kind must be "scatter").
    Scatter(RunArgs),
    /// Run a quenched-disorder sweep (kind must be "quenched_sweep").
    Quenched(RunArgs),
    /// List built-in presets, or dump one as TOML.
    Presets(PresetArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to a TOML experiment config.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Name of a built-in preset (see `spinfridge presets`).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Override the config seed.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Override the worker count (0 = automatic).
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
    /// Write the CSV here instead of the config's output path (stdout if
    /// neither is set).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override the master-equation mode.
    #[arg(long, value_name = "local|global")]
    mode: Option<String>,
}

#[derive(Args)]
struct PresetArgs {
    /// Print this preset's config as TOML instead of listing names.
    #[arg(long, value_name = "NAME")]
    dump: Option<String>,
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let kind = error_kind(&err);
            eprintln!(
                "{}",
                serde_json::json!({ "error": { "kind": kind, "message": err.to_string() } })
            );
            if matches!(err, SimError::ConfigError(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn error_kind(err: &SimError) -> &'static str {
    match err {
        SimError::DimensionMismatch(_) => "DimensionMismatch",
        SimError::NonHermitianInput { .. } => "NonHermitianInput",
        SimError::IndexOutOfRange(_) => "IndexOutOfRange",
        SimError::DomainError(_) => "DomainError",
        SimError::WrongCouplingModel(_) => "WrongCouplingModel",
        SimError::InvalidSpec(_) => "InvalidSpec",
        SimError::StepSizeTooLarge { .. } => "StepSizeTooLarge",
        SimError::DegenerateKernel(_) => "DegenerateKernel",
        SimError::OffDiagonalTooLarge(_, _) => "OffDiagonalTooLarge",
        SimError::InfiniteTemperature(_) => "InfiniteTemperature",
        SimError::SingularState(_) => "SingularState",
        SimError::AllRealizationsFailed(_) => "AllRealizationsFailed",
        SimError::ConfigError(_) => "ConfigError",
        SimError::Io(_) => "IoError",
    }
}

fn dispatch() -> Result<(), SimError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => execute(args, None),
        Command::Sweep(args) => execute(args, Some(ExperimentKind::Sweep)),
        Command::Scatter(args) => execute(args, Some(ExperimentKind::Scatter)),
        Command::Quenched(args) => execute(args, Some(ExperimentKind::QuenchedSweep)),
        Command::Presets(args) => presets(args),
    }
}

fn presets(args: PresetArgs) -> Result<(), SimError> {
    match args.dump {
        Some(name) => {
            let cfg = experiments::preset(&name)
                .ok_or_else(|| SimError::ConfigError(format!("unknown preset '{name}'")))?;
            print!("{}", cfg.to_toml());
            Ok(())
        }
        None => {
            for (name, summary) in experiments::preset_names() {
                println!("{name:<16} {summary}");
            }
            Ok(())
        }
    }
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig, SimError> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            ExperimentConfig::from_toml(&text)?
        }
        (None, Some(name)) => experiments::preset(name)
            .ok_or_else(|| SimError::ConfigError(format!("unknown preset '{name}'")))?,
        _ => {
            return Err(SimError::ConfigError(
                "exactly one of --config and --preset is required".into(),
            ))
        }
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(workers) = args.workers {
        cfg.workers = workers;
    }
    if let Some(mode) = &args.mode {
        cfg.mode = match mode.as_str() {
            "local" => MasterEquation::Local,
            "global" => MasterEquation::Global,
            other => {
                return Err(SimError::ConfigError(format!(
                    "mode must be 'local' or 'global', got '{other}'"
                )))
            }
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(args: RunArgs, required_kind: Option<ExperimentKind>) -> Result<(), SimError> {
    let cfg = load_config(&args)?;
    if let Some(kind) = required_kind {
        if cfg.kind != kind {
            return Err(SimError::ConfigError(format!(
                "this subcommand needs kind = \"{}\", config has \"{}\"",
                kind.label(),
                cfg.kind.label()
            )));
        }
    }
    for warning in cfg.bath_spec().map(|b| b.warnings()).unwrap_or_default() {
        eprintln!("warning: {warning}");
    }

    let output = experiments::run(&cfg)?;
    if let Some(s) = &output.scatter {
        eprintln!(
            "cooling fraction: {:.4}% ({} of {} samples, {} failed)",
            100.0 * s.cooling_fraction,
            s.n_refrigerators,
            s.n_samples,
            s.n_failed
        );
    }

    let out_path = args
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| PathBuf::from(&o.path)));
    match out_path {
        Some(path) => {
            output.table.write_csv(&path)?;
            eprintln!(
                "wrote {} rows to {} in {:.2} s",
                output.table.rows().len(),
                path.display(),
                output.table.metadata().wall_time_s
            );
        }
        None => print!("{}", output.table.to_csv()),
    }
    Ok(())
}
