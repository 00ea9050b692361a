// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Hand-expanded right-hand side of the two-spin XX local master equation.
//!
//! This is an independent transcription of the 16 coupled component ODEs
//! for H = h1 σ_z¹ + h2 σ_z² + J(σ_x¹σ_x² + σ_y¹σ_y²) with one local bath
//! per spin at a shared rate Γ. It exists solely to cross-validate the
//! generic dissipator and Liouvillian machinery, so it is written
//! term-by-term in component form rather than through any shared matrix
//! code. Every coefficient was rechecked against exact trace conservation
//! (Σ ȧ_ii = 0 must hold identically), which pins the signs the expansion
//! must carry.
//!
//! The density matrix is parameterized as ρ_ij = a_ij + i b_ij for i < j
//! and ρ_ii = a_ii, in the basis |00>, |01>, |10>, |11>.

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::linalg::ComplexMatrix;
use crate::model::DensityMatrix;

/// Real components of a two-spin density matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TwoSpinState {
    pub a11: f64,
    pub a22: f64,
    pub a33: f64,
    pub a44: f64,
    pub a12: f64,
    pub b12: f64,
    pub a13: f64,
    pub b13: f64,
    pub a14: f64,
    pub b14: f64,
    pub a23: f64,
    pub b23: f64,
    pub a24: f64,
    pub b24: f64,
    pub a34: f64,
    pub b34: f64,
}

/// Parameters of the two-spin XX model with uniform bath rate.
#[derive(Debug, Clone, Copy)]
pub struct TwoSpinParams {
    pub h1: f64,
    pub h2: f64,
    /// XX coupling (the 2J off-diagonal matrix element is built in below).
    pub j: f64,
    /// Shared bath rate Γ.
    pub gamma: f64,
    /// Bose occupation of bath 1 at ω = 2 h1.
    pub n1: f64,
    /// Bose occupation of bath 2 at ω = 2 h2.
    pub n2: f64,
}

impl TwoSpinState {
    /// Extract components from a 4x4 density matrix.
    pub fn from_density_matrix(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(SimError::DimensionMismatch(format!(
                "two-spin state requires dimension 4, got {}",
                rho.dim()
            )));
        }
        let m = rho.matrix();
        Ok(Self::from_matrix(m))
    }

    /// Componentwise view of any 4x4 matrix (Hermitian part implied: the
    /// lower triangle is ignored).
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let e = |i: usize, j: usize| m.get(i - 1, j - 1);
        Self {
            a11: e(1, 1).re,
            a22: e(2, 2).re,
            a33: e(3, 3).re,
            a44: e(4, 4).re,
            a12: e(1, 2).re,
            b12: e(1, 2).im,
            a13: e(1, 3).re,
            b13: e(1, 3).im,
            a14: e(1, 4).re,
            b14: e(1, 4).im,
            a23: e(2, 3).re,
            b23: e(2, 3).im,
            a24: e(2, 4).re,
            b24: e(2, 4).im,
            a34: e(3, 4).re,
            b34: e(3, 4).im,
        }
    }

    /// Rebuild the Hermitian 4x4 matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        let mut put = |i: usize, j: usize, re: f64, im: f64| {
            m.set(i - 1, j - 1, Complex64::new(re, im));
            if i != j {
                m.set(j - 1, i - 1, Complex64::new(re, -im));
            }
        };
        put(1, 1, self.a11, 0.0);
        put(2, 2, self.a22, 0.0);
        put(3, 3, self.a33, 0.0);
        put(4, 4, self.a44, 0.0);
        put(1, 2, self.a12, self.b12);
        put(1, 3, self.a13, self.b13);
        put(1, 4, self.a14, self.b14);
        put(2, 3, self.a23, self.b23);
        put(2, 4, self.a24, self.b24);
        put(3, 4, self.a34, self.b34);
        m
    }

    pub fn population_sum(&self) -> f64 {
        self.a11 + self.a22 + self.a33 + self.a44
    }

    fn scaled_add(&self, other: &Self, factor: f64) -> Self {
        Self {
            a11: self.a11 + factor * other.a11,
            a22: self.a22 + factor * other.a22,
            a33: self.a33 + factor * other.a33,
            a44: self.a44 + factor * other.a44,
            a12: self.a12 + factor * other.a12,
            b12: self.b12 + factor * other.b12,
            a13: self.a13 + factor * other.a13,
            b13: self.b13 + factor * other.b13,
            a14: self.a14 + factor * other.a14,
            b14: self.b14 + factor * other.b14,
            a23: self.a23 + factor * other.a23,
            b23: self.b23 + factor * other.b23,
            a24: self.a24 + factor * other.a24,
            b24: self.b24 + factor * other.b24,
            a34: self.a34 + factor * other.a34,
            b34: self.b34 + factor * other.b34,
        }
    }
}

/// Time derivatives of the 16 components.
#[allow(clippy::many_single_char_names)]
pub fn two_spin_rhs(s: &TwoSpinState, p: &TwoSpinParams) -> TwoSpinState {
    let g = p.gamma;
    let (n1, n2) = (p.n1, p.n2);
    let (h1, h2, j) = (p.h1, p.h2, p.j);

    TwoSpinState {
        a11: g * (s.a33 * n1 - s.a11 * (2.0 + n1 + n2) + s.a22 * n2),
        a12: g * (-s.a12 * (1.5 + n1 + n2) + s.a34 * n1) - 2.0 * s.b13 * j + 2.0 * s.b12 * h2,
        b12: g * (-s.b12 * (1.5 + n1 + n2) + s.b34 * n1) + 2.0 * s.a13 * j - 2.0 * s.a12 * h2,
        a13: g * (-s.a13 * (1.5 + n1 + n2) + s.a24 * n2) - 2.0 * s.b12 * j + 2.0 * s.b13 * h1,
        b13: g * (-s.b13 * (1.5 + n1 + n2) + s.b24 * n2) + 2.0 * s.a12 * j - 2.0 * s.a13 * h1,
        a14: -g * s.a14 * (1.0 + n1 + n2) + 2.0 * s.b14 * (h1 + h2),
        b14: -g * s.b14 * (1.0 + n1 + n2) - 2.0 * s.a14 * (h1 + h2),
        a22: g * (s.a11 * (1.0 + n2) - s.a22 * (1.0 + n1 + n2) + s.a44 * n1) - 4.0 * s.b23 * j,
        a23: -g * s.a23 * (1.0 + n1 + n2) + 2.0 * s.b23 * (h1 - h2),
        b23: -g * s.b23 * (1.0 + n1 + n2) + 2.0 * j * (s.a22 - s.a33) - 2.0 * s.a23 * (h1 - h2),
        a24: g * (s.a13 * (1.0 + n2) - s.a24 * (0.5 + n1 + n2)) + 2.0 * s.b34 * j + 2.0 * s.b24 * h1,
        b24: g * (s.b13 * (1.0 + n2) - s.b24 * (0.5 + n1 + n2)) - 2.0 * s.a34 * j - 2.0 * s.a24 * h1,
        a33: g * (s.a11 * (1.0 + n1) - s.a33 * (1.0 + n1 + n2) + s.a44 * n2) + 4.0 * s.b23 * j,
        a34: g * (s.a12 * (1.0 + n1) - s.a34 * (0.5 + n1 + n2)) + 2.0 * s.b24 * j + 2.0 * s.b34 * h2,
        b34: g * (s.b12 * (1.0 + n1) - s.b34 * (0.5 + n1 + n2)) - 2.0 * s.a24 * j - 2.0 * s.a34 * h2,
        a44: g * (s.a22 * (1.0 + n1) + s.a33 * (1.0 + n2) - s.a44 * (n1 + n2)),
    }
}

/// RK4 integration of the component system; independent of the generic
/// superoperator integrator.
pub fn integrate(state0: &TwoSpinState, p: &TwoSpinParams, t_end: f64, dt: f64) -> TwoSpinState {
    assert!(dt > 0.0 && t_end >= 0.0);
    let n_steps = (t_end / dt).ceil().max(1.0) as usize;
    let dt = t_end / n_steps as f64;
    let mut s = *state0;
    for _ in 0..n_steps {
        let k1 = two_spin_rhs(&s, p);
        let k2 = two_spin_rhs(&s.scaled_add(&k1, dt / 2.0), p);
        let k3 = two_spin_rhs(&s.scaled_add(&k2, dt / 2.0), p);
        let k4 = two_spin_rhs(&s.scaled_add(&k3, dt), p);
        let mut incr = k1.scaled_add(&k4, 1.0);
        incr = incr.scaled_add(&k2, 2.0);
        incr = incr.scaled_add(&k3, 2.0);
        s = s.scaled_add(&incr, dt / 6.0);
    }
    s
}
