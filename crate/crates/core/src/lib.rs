// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulator for few-spin quantum refrigerators.
//!
//! The working substance is an XYZ or XY+DM chain of two or three spin-1/2
//! particles, each attached to its own bosonic bath. The crate builds the
//! chain Hamiltonian, evolves the density matrix under a local
//! (weak-coupling) or global (strong-coupling) Markovian master equation,
//! and extracts the refrigeration observables: per-spin local temperature,
//! bath heat currents, and the entropy-production diagnostic. A disorder
//! engine runs quenched ensembles over Gaussian-distributed couplings, and
//! the experiments layer drives reproducible parameter sweeps with CSV
//! output. Units: hbar = k_B = 1 throughout.

pub mod disorder;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod oracle;

pub use error::{Result, SimError};
pub use linalg::ComplexMatrix;
pub use model::{BathCoupling, BathSpec, ChainSpec, DensityMatrix};
