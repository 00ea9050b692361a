// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Master-equation machinery: dissipators, the Liouvillian, time
//! evolution, and steady states.
//!
//! Density matrices are column-stacked into vectors, so a map
//! ρ -> A ρ B becomes the matrix (B^T ⊗ A). The Liouvillian is
//! L = -i(I ⊗ H - H^T ⊗ I) + Σ_i D_i with one dissipator per bath.

mod evolve;
mod global;
mod local;
mod steady;

pub use evolve::{evolve, Trajectory};
pub use global::{global_dissipator, jump_operators_global, ohmic_rate, JumpOperator, JumpOperatorSet};
pub use local::{bose_occupation, local_dissipator};
pub use steady::steady_state;

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::linalg::{self, ComplexMatrix};
use crate::model::{BathCoupling, BathSpec, ChainSpec};

/// Which part of the generator a superoperator represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperoperatorLabel {
    /// The commutator part -i[H, .].
    Coherent,
    /// The dissipator of the bath attached to a 1-based site.
    Bath(usize),
    /// A full generator (coherent part plus all dissipators).
    Total,
}

/// Linear map on column-stacked density matrices.
#[derive(Debug, Clone)]
pub struct Superoperator {
    mat: ComplexMatrix,
    label: SuperoperatorLabel,
}

impl Superoperator {
    pub fn new(mat: ComplexMatrix, label: SuperoperatorLabel) -> Self {
        assert!(mat.is_square());
        Self { mat, label }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn label(&self) -> SuperoperatorLabel {
        self.label
    }

    /// Hilbert-space dimension d with the map acting on d^2 vectors.
    pub fn hilbert_dim(&self) -> usize {
        (self.mat.rows() as f64).sqrt().round() as usize
    }

    /// Apply to a density matrix in matrix form.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.hilbert_dim();
        if rho.rows() != d || rho.cols() != d {
            return Err(SimError::DimensionMismatch(format!(
                "superoperator on dimension {d} applied to {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let v = self.mat.matvec(&linalg::vectorize(rho));
        Ok(linalg::unvectorize(&v, d))
    }

    /// How badly the trace functional fails to annihilate this map:
    /// max_k |Σ_j M[(j,j), k]|. Zero for any trace-preserving generator
    /// part, dissipators and commutators alike.
    pub fn trace_annihilation_defect(&self) -> f64 {
        let d = self.hilbert_dim();
        let n2 = self.mat.rows();
        let mut worst: f64 = 0.0;
        for k in 0..n2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d {
                acc += self.mat.get(j * d + j, k);
            }
            worst = worst.max(acc.norm());
        }
        worst
    }
}

/// Map ρ -> A ρ. Column stacking: I ⊗ A.
pub(crate) fn left_multiplier(a: &ComplexMatrix) -> ComplexMatrix {
    linalg::kron(&ComplexMatrix::identity(a.rows()), a)
}

/// Map ρ -> ρ A. Column stacking: A^T ⊗ I.
pub(crate) fn right_multiplier(a: &ComplexMatrix) -> ComplexMatrix {
    linalg::kron(&a.transpose(), &ComplexMatrix::identity(a.rows()))
}

/// Map ρ -> A ρ A†. Column stacking: conj(A) ⊗ A.
pub(crate) fn sandwich(a: &ComplexMatrix) -> ComplexMatrix {
    linalg::kron(&a.conj(), a)
}

/// One GKLS channel: rate (A ρ A† - {A†A, ρ}/2) in superoperator form.
pub(crate) fn gkls_channel(a: &ComplexMatrix, rate: f64) -> ComplexMatrix {
    let ada = a.adjoint().matmul(a);
    let anti = &left_multiplier(&ada) + &right_multiplier(&ada);
    (&sandwich(a) - &anti.scale_re(0.5)).scale_re(rate)
}

/// Coherent part -i[H, .].
pub fn coherent_superoperator(h: &ComplexMatrix) -> Superoperator {
    let m = (&left_multiplier(h) - &right_multiplier(h)).scale(Complex64::new(0.0, -1.0));
    Superoperator::new(m, SuperoperatorLabel::Coherent)
}

/// Full generator: vectorized -i[H, .] plus the sum of dissipators.
pub fn build_liouvillian(h: &ComplexMatrix, dissipators: &[Superoperator]) -> Result<Superoperator> {
    let d = h.rows();
    let mut total = coherent_superoperator(h).mat;
    for dis in dissipators {
        if dis.hilbert_dim() != d {
            return Err(SimError::DimensionMismatch(format!(
                "dissipator on dimension {} combined with H on dimension {d}",
                dis.hilbert_dim()
            )));
        }
        total = &total + dis.matrix();
    }
    Ok(Superoperator::new(total, SuperoperatorLabel::Total))
}

/// Which master equation a bath specification selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MasterEquation {
    Local,
    Global,
}

impl MasterEquation {
    pub fn of(baths: &BathSpec) -> Self {
        if baths.is_local() {
            MasterEquation::Local
        } else {
            MasterEquation::Global
        }
    }
}

/// Hamiltonian, per-bath dissipators, and the assembled Liouvillian for
/// one chain-and-baths configuration. Immutable once built; safe to share
/// across threads.
#[derive(Debug, Clone)]
pub struct Generator {
    hamiltonian: ComplexMatrix,
    dissipators: Vec<Superoperator>,
    liouvillian: Superoperator,
    jumps: Option<JumpOperatorSet>,
    max_rate: f64,
}

impl Generator {
    pub fn build(spec: &ChainSpec, baths: &BathSpec) -> Result<Self> {
        if baths.n_baths() != spec.n_sites() {
            return Err(SimError::DimensionMismatch(format!(
                "{} baths for {} sites",
                baths.n_baths(),
                spec.n_sites()
            )));
        }
        let h = crate::model::build_system_hamiltonian(spec)?;
        let (dissipators, jumps, max_rate) = match baths.coupling() {
            BathCoupling::Local { rates } => {
                let dis = local_dissipator(spec, baths)?;
                let max_rate = rates.iter().cloned().fold(0.0, f64::max);
                (dis, None, max_rate)
            }
            BathCoupling::Global { .. } => {
                let jumps = jump_operators_global(&h, spec, baths)?;
                let dis = global_dissipator(&jumps, spec.n_sites());
                let max_rate = jumps.max_rate();
                (dis, Some(jumps), max_rate)
            }
        };
        let liouvillian = build_liouvillian(&h, &dissipators)?;
        Ok(Self {
            hamiltonian: h,
            dissipators,
            liouvillian,
            jumps,
            max_rate,
        })
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    /// One dissipator per site, in site order.
    pub fn dissipators(&self) -> &[Superoperator] {
        &self.dissipators
    }

    /// Dissipator of a 1-based site.
    pub fn dissipator(&self, site: usize) -> &Superoperator {
        &self.dissipators[site - 1]
    }

    pub fn liouvillian(&self) -> &Superoperator {
        &self.liouvillian
    }

    pub fn jump_operators(&self) -> Option<&JumpOperatorSet> {
        self.jumps.as_ref()
    }

    /// Default integrator step 0.05 / max(|H|_max, largest rate).
    pub fn default_dt(&self) -> f64 {
        0.05 / self.hamiltonian.max_abs().max(self.max_rate).max(1e-12)
    }
}
