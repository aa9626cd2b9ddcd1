use super::amplification::{beta_amplification_mode, ModeCoefficients};
use super::report::is_stable_radius;
use crate::error::{Error, Result};
use crate::model::ProblemParams;
use crate::scalar::Real;

/// Stability of one beta-scheme mode over a `(theta, dt)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaRegion<T> {
    pub mode: usize,
    pub beta: T,
    pub thetas: Vec<T>,
    pub dts: Vec<T>,
    /// Row-major over `(theta, dt)`.
    pub radii: Vec<T>,
}

impl<T: Real> ThetaRegion<T> {
    pub fn radius(&self, theta_idx: usize, dt_idx: usize) -> T {
        self.radii[theta_idx * self.dts.len() + dt_idx]
    }

    pub fn is_stable(&self, theta_idx: usize, dt_idx: usize) -> bool {
        is_stable_radius(self.radius(theta_idx, dt_idx))
    }

    /// Largest grid `dt` such that it and every smaller grid `dt` are stable
    /// for the given theta row; `None` if the smallest is already unstable.
    /// Assumes `dts` ascending.
    pub fn stable_limit(&self, theta_idx: usize) -> Option<T> {
        let mut last = None;
        for (k, &dt) in self.dts.iter().enumerate() {
            if !self.is_stable(theta_idx, k) {
                break;
            }
            last = Some(dt);
        }
        last
    }
}

pub fn theta_region<T: Real>(
    params: &ProblemParams<T>,
    mode: usize,
    thetas: &[T],
    dts: &[T],
    beta: T,
) -> Result<ThetaRegion<T>> {
    params.validate()?;
    if thetas.is_empty() || dts.is_empty() {
        return Err(Error::Invalid("theta and dt grids must be nonempty".into()));
    }
    if mode == 0 {
        return Err(Error::InvalidParameter {
            name: "j",
            value: "0".into(),
            allowed: "j >= 1",
        });
    }
    if let Some(&th) = thetas.iter().find(|&&th| !(th >= T::zero() && th <= T::lit(0.5))) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: format!("{th}"),
            allowed: "0 ≤ θ ≤ 1/2",
        });
    }
    let m = ModeCoefficients::from_params(params, mode);
    let mut radii = Vec::with_capacity(thetas.len() * dts.len());
    for &theta in thetas {
        for &dt in dts {
            radii.push(beta_amplification_mode(&m, dt, beta, theta)?.radius);
        }
    }
    Ok(ThetaRegion {
        mode,
        beta,
        thetas: thetas.to_vec(),
        dts: dts.to_vec(),
        radii,
    })
}
