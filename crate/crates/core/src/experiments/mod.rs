// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Configuration-driven experiment drivers with CSV output.

mod config;
mod presets;
mod runner;
mod table;

pub use config::{
    BathSection, ChainSection, CouplingsSection, DisorderSection, ExperimentConfig,
    ExperimentKind, GridSection, GridSpacing, ScatterFamily, ScatterSection, SweepSection,
    TrajectorySection,
};
pub use presets::{preset, preset_names};
pub use runner::{run, run_scatter, run_sweep, run_trajectory, RunOutput, ScatterSummary, WORKERS_ENV};
pub use table::{read_csv, ResultTable, TableMetadata};
