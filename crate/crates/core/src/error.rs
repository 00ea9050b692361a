// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes of the simulator.
#[derive(Debug, Error)]
pub enum SimError {
    /// Matrix or vector dimensions do not match the operation's contract.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix required to be Hermitian failed the Hermiticity check.
    #[error("non-Hermitian input: max |A - A†| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NonHermitianInput { deviation: f64, tolerance: f64 },

    /// A site or matrix index lies outside the valid range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A scalar argument lies outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    DomainError(String),

    /// A bath specification with the wrong coupling model was supplied.
    #[error("wrong coupling model: {0}")]
    WrongCouplingModel(String),

    /// An invalid chain or bath specification.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// The integrator produced a state violating positivity beyond tolerance.
    #[error("step size too large: sampled state has eigenvalue {min_eigenvalue:.3e} at t = {t}")]
    StepSizeTooLarge { t: f64, min_eigenvalue: f64 },

    /// The Liouvillian kernel is not one-dimensional and the fallback
    /// integration did not converge either.
    #[error("degenerate kernel: {0}")]
    DegenerateKernel(String),

    /// A reduced state carries off-diagonal weight beyond what the local
    /// temperature definition tolerates.
    #[error("off-diagonal too large: |rho_01| = {0:.3e} on site {1}")]
    OffDiagonalTooLarge(f64, usize),

    /// The population is exactly 1/2, where the local temperature diverges.
    #[error("infinite temperature: population {0} is 1/2 within 1e-12")]
    InfiniteTemperature(f64),

    /// A state too singular for the entropy computation even after
    /// regularization.
    #[error("singular state: {0}")]
    SingularState(String),

    /// Every disorder realization failed to produce a steady state.
    #[error("all {0} realizations failed to produce a valid steady state")]
    AllRealizationsFailed(usize),

    /// Configuration file parsing or validation failure.
    #[error("config error: {0}")]
    ConfigError(String),

    /// Filesystem failure while writing or reading results.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SimError>;
