//! Closed-form spectra of the operators acting on wall traces.
//!
//! All operators below are diagonal in the sine basis `sin(j pi z/L)`:
//!
//! * the added-mass (Neumann-to-Dirichlet) operator, eigenvalues
//!   `mu_j = L / (j pi tanh(j pi R / L))`;
//! * the Robin-trace operator, eigenvalues `lambda_j = mu_j / (mu_j + alpha)`
//!   with `alpha = rho_s h / rho_f`;
//! * the wall stiffness, eigenvalues `ell_j = C0 + C1 (j pi / L)^2`.

use crate::error::{Error, Result};
use crate::model::{FluidParams, Geometry, ModalVector, ProblemParams, WallParams};
use crate::scalar::Real;

/// Above this argument `tanh` is replaced by 1 (relative error < 1e-17).
const TANH_SATURATION: f64 = 20.0;

pub fn added_mass_eigenvalues<T: Real>(geom: &Geometry<T>, modes: usize) -> Vec<T> {
    (1..=modes)
        .map(|j| {
            let k = geom.wavenumber(j);
            let x = k * geom.radius;
            let th = if x > T::lit(TANH_SATURATION) { T::one() } else { x.tanh() };
            T::one() / (k * th)
        })
        .collect()
}

/// `lambda_j = mu_j / (mu_j + alpha)` for a given mass ratio `alpha >= 0`.
pub fn robin_from_added_mass<T: Real>(mu: &[T], alpha: T) -> Vec<T> {
    mu.iter().map(|&m| m / (m + alpha)).collect()
}

pub fn robin_trace_eigenvalues<T: Real>(
    geom: &Geometry<T>,
    fluid: &FluidParams<T>,
    wall: &WallParams<T>,
    modes: usize,
) -> Vec<T> {
    let alpha = wall.surface_mass() / fluid.rho_f;
    robin_from_added_mass(&added_mass_eigenvalues(geom, modes), alpha)
}

pub fn structure_stiffness_eigenvalues<T: Real>(
    wall: &WallParams<T>,
    geom: &Geometry<T>,
    modes: usize,
) -> Vec<T> {
    (1..=modes)
        .map(|j| {
            let k = geom.wavenumber(j);
            wall.c0 + wall.c1 * k * k
        })
        .collect()
}

/// Viscoelastic damping per mode, `D0 + D1 (j pi / L)^2`.
pub fn structure_damping_eigenvalues<T: Real>(
    wall: &WallParams<T>,
    geom: &Geometry<T>,
    modes: usize,
) -> Vec<T> {
    (1..=modes)
        .map(|j| {
            let k = geom.wavenumber(j);
            wall.d0 + wall.d1 * k * k
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnVerdict {
    /// `rho_s h / (rho_f mu_max) < 1`: unstable for every time step.
    Unstable,
    /// Ratio exactly 1; the strict inequality does not decide it.
    StableBoundary,
    NotUnconditionallyUnstable,
}

impl DnVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            DnVerdict::Unstable => "unstable",
            DnVerdict::StableBoundary => "stable-boundary",
            DnVerdict::NotUnconditionallyUnstable => "not-unconditionally-unstable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnCriterion<T> {
    pub mu_max: T,
    /// `rho_s h / (rho_f mu_max)`
    pub ratio: T,
    /// Wall density at which the ratio equals one, `rho_f mu_max / h`.
    pub critical_rho_s: T,
    pub verdict: DnVerdict,
}

impl<T: Real> DnCriterion<T> {
    pub fn unstable(&self) -> bool {
        self.verdict == DnVerdict::Unstable
    }
}

pub fn dn_instability_criterion<T: Real>(
    geom: &Geometry<T>,
    fluid: &FluidParams<T>,
    wall: &WallParams<T>,
) -> DnCriterion<T> {
    let mu_max = added_mass_eigenvalues(geom, 1)[0];
    let ratio = wall.surface_mass() / (fluid.rho_f * mu_max);
    // a few ulps of slack so that rho_s = critical_rho_s lands on the boundary
    let slack = T::lit(4.0) * T::epsilon();
    let verdict = if (ratio - T::one()).abs() <= slack {
        DnVerdict::StableBoundary
    } else if ratio < T::one() {
        DnVerdict::Unstable
    } else {
        DnVerdict::NotUnconditionallyUnstable
    };
    DnCriterion {
        mu_max,
        ratio,
        critical_rho_s: fluid.rho_f * mu_max / wall.h,
        verdict,
    }
}

/// Per-mode spectra of every operator for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpectrum<T> {
    pub mu: Vec<T>,
    pub lambda: Vec<T>,
    pub ell: Vec<T>,
    /// Viscoelastic damping per mode (all zero for an elastic wall).
    pub damping: Vec<T>,
    /// `rho_s h / rho_f`, cm.
    pub alpha: T,
    /// `rho_s h`
    pub surface_mass: T,
    pub rho_f: T,
}

impl<T: Real> OperatorSpectrum<T> {
    pub fn new(params: &ProblemParams<T>, modes: usize) -> Self {
        let mu = added_mass_eigenvalues(&params.geometry, modes);
        let alpha = params.mass_ratio();
        Self {
            lambda: robin_from_added_mass(&mu, alpha),
            ell: structure_stiffness_eigenvalues(&params.wall, &params.geometry, modes),
            damping: structure_damping_eigenvalues(&params.wall, &params.geometry, modes),
            mu,
            alpha,
            surface_mass: params.wall.surface_mass(),
            rho_f: params.fluid.rho_f,
        }
    }

    pub fn modes(&self) -> usize {
        self.mu.len()
    }

    /// Effective modal mass of the coupled problem, `rho_s h + rho_f mu_j`.
    pub fn coupled_mass(&self, j: usize) -> T {
        self.surface_mass + self.rho_f * self.mu[j - 1]
    }
}

fn check_modes<T: Real>(m: &ModalVector<T>, spectrum: &OperatorSpectrum<T>) -> Result<()> {
    if m.modes() != spectrum.modes() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.modes(),
            got: m.modes(),
        });
    }
    Ok(())
}

/// Robin-trace operator: `(S m)_j = lambda_j m_j`.
pub fn apply_s_modal<T: Real>(m: &ModalVector<T>, spectrum: &OperatorSpectrum<T>) -> Result<ModalVector<T>> {
    check_modes(m, spectrum)?;
    m.scale_by(&spectrum.lambda)
}

/// Added-mass operator: `(M_A m)_j = mu_j m_j`.
pub fn apply_ma_modal<T: Real>(m: &ModalVector<T>, spectrum: &OperatorSpectrum<T>) -> Result<ModalVector<T>> {
    check_modes(m, spectrum)?;
    m.scale_by(&spectrum.mu)
}
