//! Per-mode amplification matrices of the homogeneous recurrences.

use num_complex::Complex;

use super::eig::{eigenvalues3, Mat3};
use crate::error::{Error, Result};
use crate::model::ProblemParams;
use crate::scalar::Real;
use crate::spectral::OperatorSpectrum;

/// Scalar coefficients of one wall mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients<T> {
    /// `rho_s h`
    pub surface_mass: T,
    /// `rho_f mu_j`
    pub added_mass: T,
    pub stiffness: T,
    pub damping: T,
    pub lambda: T,
}

impl<T: Real> ModeCoefficients<T> {
    /// Coefficients of mode `j` (1-based).
    pub fn from_spectrum(spectrum: &OperatorSpectrum<T>, j: usize) -> Self {
        let k = j - 1;
        Self {
            surface_mass: spectrum.surface_mass,
            added_mass: spectrum.rho_f * spectrum.mu[k],
            stiffness: spectrum.ell[k],
            damping: spectrum.damping[k],
            lambda: spectrum.lambda[k],
        }
    }

    pub fn from_params(params: &ProblemParams<T>, j: usize) -> Self {
        Self::from_spectrum(&OperatorSpectrum::new(params, j), j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplification<T> {
    pub matrix: Mat3<T>,
    pub eigenvalues: [Complex<T>; 3],
    pub radius: T,
}

impl<T: Real> Amplification<T> {
    fn from_matrix(matrix: Mat3<T>) -> Self {
        let eigenvalues = eigenvalues3(&matrix);
        let radius = eigenvalues.iter().fold(T::zero(), |r, z| r.max(z.norm()));
        Self {
            matrix,
            eigenvalues,
            radius,
        }
    }
}

fn check_step<T: Real>(dt: T) -> Result<()> {
    if dt.is_finite() && dt > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "dt",
            value: format!("{dt}"),
            allowed: "dt > 0",
        })
    }
}

/// Amplification of the beta-scheme acting on `(eta^{n+1}, eta^n, p^{n+1})`.
pub fn beta_amplification_mode<T: Real>(
    m: &ModeCoefficients<T>,
    dt: T,
    beta: T,
    theta: T,
) -> Result<Amplification<T>> {
    check_step(dt)?;
    let (zero, one, two) = (T::zero(), T::one(), T::lit(2.0));
    let a = m.surface_mass;
    let c = dt * dt * m.stiffness;
    let delta = m.damping * dt / two;
    let denom = a + theta * c + delta;
    let q = beta * m.lambda;
    let matrix = [
        [
            (two * a - (one - two * theta) * c) / denom,
            -(a + theta * c - delta) / denom,
            dt * dt * beta * q / denom,
        ],
        [one, zero, zero],
        [zero, zero, q],
    ];
    Ok(Amplification::from_matrix(matrix))
}

/// Companion matrix of the Dirichlet-Neumann recurrence acting on
/// `(eta^{n+1}, eta^n, eta^{n-1})`.
pub fn dn_amplification_mode<T: Real>(m: &ModeCoefficients<T>, dt: T) -> Result<Amplification<T>> {
    check_step(dt)?;
    let (zero, one, two) = (T::zero(), T::one(), T::lit(2.0));
    let a = m.surface_mass;
    let b = m.added_mass;
    let c = dt * dt * m.stiffness;
    let delta = m.damping * dt / two;
    let lead = a + delta;
    let matrix = [
        [
            (two * a - b - c) / lead,
            -(a - two * b - delta) / lead,
            -b / lead,
        ],
        [one, zero, zero],
        [zero, one, zero],
    ];
    Ok(Amplification::from_matrix(matrix))
}

pub fn beta_amplification<T: Real>(
    params: &ProblemParams<T>,
    j: usize,
    dt: T,
    beta: T,
    theta: T,
) -> Result<Amplification<T>> {
    check_mode(j)?;
    beta_amplification_mode(&ModeCoefficients::from_params(params, j), dt, beta, theta)
}

pub fn dn_amplification<T: Real>(params: &ProblemParams<T>, j: usize, dt: T) -> Result<Amplification<T>> {
    check_mode(j)?;
    dn_amplification_mode(&ModeCoefficients::from_params(params, j), dt)
}

fn check_mode(j: usize) -> Result<()> {
    if j == 0 {
        return Err(Error::InvalidParameter {
            name: "j",
            value: "0".into(),
            allowed: "j >= 1",
        });
    }
    Ok(())
}

/// Largest time step for which the explicit (`theta = 0`) wall update of an
/// undamped mode is stable, `2 sqrt(rho_s h / ell_j)`.
pub fn explicit_critical_dt<T: Real>(m: &ModeCoefficients<T>) -> T {
    T::lit(2.0) * (m.surface_mass / m.stiffness).sqrt()
}
