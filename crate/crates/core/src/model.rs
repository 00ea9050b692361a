// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Chain and bath specifications, Hamiltonian construction, and the
//! initial thermal product state.
//!
//! The system Hamiltonian is
//!
//!   H_S = Σ_i h_i σ_z^i
//!       + Σ_bonds J_xy [(1+γ) σ_x σ_x + (1-γ) σ_y σ_y]
//!       + Σ_bonds J_z σ_z σ_z
//!       + Σ_bonds J_dm (σ_x σ_y - σ_y σ_x)
//!
//! Basis convention: single-spin basis {|0>, |1>} with σ_z|0> = +|0>, so
//! |0> is the high-energy state for h > 0 and the thermal population
//! τ = <0|ρ|0> stays below 1/2 at positive temperature. Multi-spin basis
//! is the Kronecker (lexicographic) order with site 1 as the leftmost
//! factor. Sites are 1-based everywhere in the public API.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::linalg::{self, ComplexMatrix};

/// σ_x.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// σ_y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// σ_z with σ_z|0> = +|0>.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

/// Lowering operator σ⁻ = |1><0|: maps the σ_z = +1 state to the σ_z = -1
/// state, i.e. lowers the energy for h > 0.
pub fn sigma_minus() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(1, 0, Complex64::new(1.0, 0.0));
    m
}

/// Raising operator σ⁺ = |0><1|.
pub fn sigma_plus() -> ComplexMatrix {
    sigma_minus().adjoint()
}

/// One nearest-neighbor bond with its three coupling strengths.
///
/// Couplings may be negative; the DM term is antisymmetric under swapping
/// `i` and `j`, so the site order is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bond {
    /// First site, 1-based.
    pub i: usize,
    /// Second site, 1-based.
    pub j: usize,
    pub j_xy: f64,
    pub j_z: f64,
    pub j_dm: f64,
}

/// Spin chain specification: fields, anisotropy, and bond couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    n_sites: usize,
    /// Per-site field strengths h_i > 0.
    fields: Vec<f64>,
    /// xy anisotropy γ (γ = 0 is the XX point).
    gamma: f64,
    bonds: Vec<Bond>,
}

impl ChainSpec {
    /// Validating constructor. Fields must be positive (the local
    /// temperature definition divides by h and fixes the level ordering);
    /// bonds must connect distinct valid sites with no duplicated pair.
    pub fn new(fields: Vec<f64>, gamma: f64, bonds: Vec<Bond>) -> Result<Self> {
        let n_sites = fields.len();
        if n_sites < 1 {
            return Err(SimError::InvalidSpec("at least one site required".into()));
        }
        for (idx, &h) in fields.iter().enumerate() {
            if !(h > 0.0) || !h.is_finite() {
                return Err(SimError::InvalidSpec(format!(
                    "field h_{} = {h} must be positive and finite",
                    idx + 1
                )));
            }
        }
        if !gamma.is_finite() {
            return Err(SimError::InvalidSpec("gamma must be finite".into()));
        }
        let mut seen = Vec::new();
        for b in &bonds {
            if b.i < 1 || b.i > n_sites || b.j < 1 || b.j > n_sites || b.i == b.j {
                return Err(SimError::InvalidSpec(format!(
                    "bond ({}, {}) references invalid sites for n = {n_sites}",
                    b.i, b.j
                )));
            }
            let key = (b.i.min(b.j), b.i.max(b.j));
            if seen.contains(&key) {
                return Err(SimError::InvalidSpec(format!(
                    "duplicate bond between sites {} and {}",
                    key.0, key.1
                )));
            }
            seen.push(key);
            for v in [b.j_xy, b.j_z, b.j_dm] {
                if !v.is_finite() {
                    return Err(SimError::InvalidSpec("bond coupling must be finite".into()));
                }
            }
        }
        Ok(Self {
            n_sites,
            fields,
            gamma,
            bonds,
        })
    }

    /// Uniform couplings on the default topology: a single bond for two
    /// sites, a ring (1,2), (2,3), ..., (N,1) for three or more.
    pub fn uniform(fields: Vec<f64>, gamma: f64, j_xy: f64, j_z: f64, j_dm: f64) -> Result<Self> {
        let n = fields.len();
        let bonds = default_bonds(n, j_xy, j_z, j_dm);
        Self::new(fields, gamma, bonds)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Hilbert-space dimension 2^N.
    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    /// Field on a 1-based site.
    pub fn field(&self, site: usize) -> f64 {
        self.fields[site - 1]
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Copy with the chosen coupling family replaced on every bond.
    pub fn with_uniform_coupling(&self, family: CouplingFamily, value: f64) -> Self {
        let mut out = self.clone();
        for b in &mut out.bonds {
            family.set(b, value);
        }
        out
    }

    /// Copy with per-bond values for one coupling family.
    pub fn with_bond_couplings(&self, family: CouplingFamily, values: &[f64]) -> Self {
        assert_eq!(values.len(), self.bonds.len());
        let mut out = self.clone();
        for (b, &v) in out.bonds.iter_mut().zip(values) {
            family.set(b, v);
        }
        out
    }
}

/// Default bond list: one bond for N = 2, a ring for N >= 3.
pub fn default_bonds(n_sites: usize, j_xy: f64, j_z: f64, j_dm: f64) -> Vec<Bond> {
    match n_sites {
        0 | 1 => Vec::new(),
        2 => vec![Bond {
            i: 1,
            j: 2,
            j_xy,
            j_z,
            j_dm,
        }],
        n => (1..=n)
            .map(|i| Bond {
                i,
                j: if i == n { 1 } else { i + 1 },
                j_xy,
                j_z,
                j_dm,
            })
            .collect(),
    }
}

/// Which coupling family an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingFamily {
    JXy,
    JZ,
    JDm,
}

impl CouplingFamily {
    pub(crate) fn set(self, bond: &mut Bond, value: f64) {
        match self {
            CouplingFamily::JXy => bond.j_xy = value,
            CouplingFamily::JZ => bond.j_z = value,
            CouplingFamily::JDm => bond.j_dm = value,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CouplingFamily::JXy => "j_xy",
            CouplingFamily::JZ => "j_z",
            CouplingFamily::JDm => "j_dm",
        }
    }
}

/// Spin-bath coupling model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BathCoupling {
    /// Weak-coupling local dissipators with per-site rates Γ_i.
    Local { rates: Vec<f64> },
    /// Strong-coupling global dissipators with per-site Ohmic strengths α_i
    /// and cutoff Ω. `cutoff = None` selects 10 x spectral radius of H_S.
    Global { alphas: Vec<f64>, cutoff: Option<f64> },
}

/// Per-site bath temperatures plus the coupling model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BathSpec {
    temperatures: Vec<f64>,
    coupling: BathCoupling,
}

impl BathSpec {
    pub fn new(temperatures: Vec<f64>, coupling: BathCoupling) -> Result<Self> {
        for (idx, &t) in temperatures.iter().enumerate() {
            if !(t > 0.0) || !t.is_finite() {
                return Err(SimError::InvalidSpec(format!(
                    "bath temperature T_{} = {t} must be positive and finite",
                    idx + 1
                )));
            }
        }
        match &coupling {
            BathCoupling::Local { rates } => {
                if rates.len() != temperatures.len() {
                    return Err(SimError::InvalidSpec(
                        "one rate per bath temperature required".into(),
                    ));
                }
                for (idx, &g) in rates.iter().enumerate() {
                    if !(g > 0.0) || !g.is_finite() {
                        return Err(SimError::InvalidSpec(format!(
                            "rate Γ_{} = {g} must be positive and finite",
                            idx + 1
                        )));
                    }
                }
            }
            BathCoupling::Global { alphas, cutoff } => {
                if alphas.len() != temperatures.len() {
                    return Err(SimError::InvalidSpec(
                        "one alpha per bath temperature required".into(),
                    ));
                }
                for (idx, &a) in alphas.iter().enumerate() {
                    if !(a > 0.0) || !a.is_finite() {
                        return Err(SimError::InvalidSpec(format!(
                            "alpha_{} = {a} must be positive and finite",
                            idx + 1
                        )));
                    }
                }
                if let Some(w) = cutoff {
                    if !(*w > 0.0) || !w.is_finite() {
                        return Err(SimError::InvalidSpec(format!(
                            "cutoff Ω = {w} must be positive and finite"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            temperatures,
            coupling,
        })
    }

    pub fn local(temperatures: Vec<f64>, rates: Vec<f64>) -> Result<Self> {
        Self::new(temperatures, BathCoupling::Local { rates })
    }

    pub fn global(temperatures: Vec<f64>, alphas: Vec<f64>, cutoff: Option<f64>) -> Result<Self> {
        Self::new(temperatures, BathCoupling::Global { alphas, cutoff })
    }

    pub fn n_baths(&self) -> usize {
        self.temperatures.len()
    }

    pub fn temperatures(&self) -> &[f64] {
        &self.temperatures
    }

    /// Bath temperature of a 1-based site.
    pub fn temperature(&self, site: usize) -> f64 {
        self.temperatures[site - 1]
    }

    pub fn coupling(&self) -> &BathCoupling {
        &self.coupling
    }

    pub fn is_local(&self) -> bool {
        matches!(self.coupling, BathCoupling::Local { .. })
    }

    /// Non-fatal validity warnings. The Markovian treatment needs
    /// max α_i << 1, so strengths above 0.1 are flagged but accepted.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let BathCoupling::Global { alphas, .. } = &self.coupling {
            if let Some(max) = alphas.iter().cloned().fold(None::<f64>, |m, a| {
                Some(m.map_or(a, |m| m.max(a)))
            }) {
                if max > 0.1 {
                    out.push(format!(
                        "max alpha = {max} exceeds 0.1; the Markovian weak-coupling \
                         treatment assumes max alpha << 1"
                    ));
                }
            }
        }
        out
    }
}

/// Density matrix of an N-site chain: Hermitian, unit trace, positive
/// semidefinite within tolerance.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

/// Validation tolerances for [`DensityMatrix`].
pub const DM_HERMITICITY_TOL: f64 = 1e-10;
pub const DM_TRACE_TOL: f64 = 1e-9;
pub const DM_POSITIVITY_TOL: f64 = 1e-9;

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() || !mat.rows().is_power_of_two() {
            return Err(SimError::DimensionMismatch(format!(
                "density matrix must be 2^N x 2^N, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        mat.require_hermitian(DM_HERMITICITY_TOL)?;
        let tr = mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DM_TRACE_TOL {
            return Err(SimError::InvalidSpec(format!(
                "density matrix trace {tr} deviates from 1 beyond {DM_TRACE_TOL:e}"
            )));
        }
        let min = linalg::hermitian_eigenvalues(&mat.hermitize())?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -DM_POSITIVITY_TOL {
            return Err(SimError::InvalidSpec(format!(
                "density matrix has eigenvalue {min:.3e} below -{DM_POSITIVITY_TOL:e}"
            )));
        }
        Ok(Self { mat })
    }

    /// Wrap without validation; for internal states already known valid.
    pub(crate) fn from_matrix_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn n_sites(&self) -> usize {
        self.mat.rows().trailing_zeros() as usize
    }

    /// Reduced 2x2 state of a 1-based site.
    pub fn reduced(&self, site: usize) -> Result<ComplexMatrix> {
        linalg::partial_trace(&self.mat, self.n_sites(), site)
    }

    /// Trace distance to another state.
    pub fn distance(&self, other: &DensityMatrix) -> Result<f64> {
        linalg::trace_distance(&self.mat.hermitize(), &other.mat.hermitize())
    }
}

/// Embed a single-spin operator at `site` (1-based): I ⊗ ... ⊗ op ⊗ ... ⊗ I.
pub fn site_operator(n_sites: usize, site: usize, op: &ComplexMatrix) -> Result<ComplexMatrix> {
    if site < 1 || site > n_sites {
        return Err(SimError::IndexOutOfRange(format!(
            "site {site} not in 1..={n_sites}"
        )));
    }
    let mut out = ComplexMatrix::identity(1);
    for s in 1..=n_sites {
        let factor = if s == site {
            op.clone()
        } else {
            ComplexMatrix::identity(2)
        };
        out = linalg::kron(&out, &factor);
    }
    Ok(out)
}

/// Field term Σ_i h_i σ_z^i; diagonal in the computational basis.
pub fn build_field_term(spec: &ChainSpec) -> ComplexMatrix {
    let n = spec.n_sites();
    let mut h = ComplexMatrix::zeros(spec.dim(), spec.dim());
    for site in 1..=n {
        let term = site_operator(n, site, &sigma_z()).expect("validated site");
        h = &h + &term.scale_re(spec.field(site));
    }
    h
}

/// One bond's interaction term:
/// J_xy [(1+γ) σ_x^i σ_x^j + (1-γ) σ_y^i σ_y^j] + J_z σ_z^i σ_z^j
/// + J_dm (σ_x^i σ_y^j - σ_y^i σ_x^j).
pub fn build_bond_term(n_sites: usize, bond: &Bond, gamma: f64) -> Result<ComplexMatrix> {
    let xi = site_operator(n_sites, bond.i, &sigma_x())?;
    let xj = site_operator(n_sites, bond.j, &sigma_x())?;
    let yi = site_operator(n_sites, bond.i, &sigma_y())?;
    let yj = site_operator(n_sites, bond.j, &sigma_y())?;
    let zi = site_operator(n_sites, bond.i, &sigma_z())?;
    let zj = site_operator(n_sites, bond.j, &sigma_z())?;

    let xx = xi.matmul(&xj);
    let yy = yi.matmul(&yj);
    let xy = xi.matmul(&yj);
    let yx = yi.matmul(&xj);
    let zz = zi.matmul(&zj);

    let mut term = &xx.scale_re(bond.j_xy * (1.0 + gamma)) + &yy.scale_re(bond.j_xy * (1.0 - gamma));
    term = &term + &zz.scale_re(bond.j_z);
    term = &term + &(&xy - &yx).scale_re(bond.j_dm);
    Ok(term)
}

/// Full system Hamiltonian H_S = field term + all bond terms.
pub fn build_system_hamiltonian(spec: &ChainSpec) -> Result<ComplexMatrix> {
    let mut h = build_field_term(spec);
    for bond in spec.bonds() {
        h = &h + &build_bond_term(spec.n_sites(), bond, spec.gamma())?;
    }
    Ok(h)
}

/// Thermal single-spin excited-state population
/// τ = e^{-2h/T} / (1 + e^{-2h/T}).
pub fn thermal_population(h: f64, temperature: f64) -> f64 {
    let w = (-2.0 * h / temperature).exp();
    w / (1.0 + w)
}

/// Product of single-spin Gibbs states, ⊗_i diag(τ_i, 1-τ_i): every spin
/// starts at equilibrium with its own bath.
pub fn thermal_product_state(spec: &ChainSpec, baths: &BathSpec) -> Result<DensityMatrix> {
    if baths.n_baths() != spec.n_sites() {
        return Err(SimError::DimensionMismatch(format!(
            "{} baths for {} sites",
            baths.n_baths(),
            spec.n_sites()
        )));
    }
    let mut rho = ComplexMatrix::identity(1);
    for site in 1..=spec.n_sites() {
        let tau = thermal_population(spec.field(site), baths.temperature(site));
        rho = linalg::kron(&rho, &ComplexMatrix::diag_real(&[tau, 1.0 - tau]));
    }
    DensityMatrix::new(rho)
}
