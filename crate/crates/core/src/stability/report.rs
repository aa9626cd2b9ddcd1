use super::amplification::{beta_amplification_mode, dn_amplification_mode, ModeCoefficients};
use crate::error::{Error, Result};
use crate::model::{Discretization, ProblemParams};
use crate::scalar::Real;
use crate::schemes::SchemeKind;
use crate::spectral::{dn_instability_criterion, OperatorSpectrum};

/// Radii up to `1 + STABILITY_TOLERANCE` count as stable.
pub const STABILITY_TOLERANCE: f64 = 1e-12;

pub fn is_stable_radius<T: Real>(radius: T) -> bool {
    radius <= T::one() + T::lit(STABILITY_TOLERANCE)
}

/// Per-mode spectral radii of one scheme at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport<T> {
    pub scheme: SchemeKind,
    /// `radii[j - 1]` belongs to mode `j`.
    pub radii: Vec<T>,
    pub stable: bool,
    /// `rho_s h / (rho_f mu_max)`
    pub dn_ratio: T,
    /// 1-based index of the mode with the largest radius.
    pub worst_mode: usize,
}

impl<T: Real> StabilityReport<T> {
    pub fn worst_radius(&self) -> T {
        self.radii[self.worst_mode - 1]
    }

    pub fn verdict(&self) -> &'static str {
        if self.stable {
            "stable"
        } else {
            "unstable"
        }
    }
}

/// Spectral radii of modes `1..=disc.modes` for `scheme`, using `disc.dt`,
/// `disc.beta` and `disc.theta`.
pub fn stability_report<T: Real>(
    params: &ProblemParams<T>,
    disc: &Discretization<T>,
    scheme: SchemeKind,
) -> Result<StabilityReport<T>> {
    params.validate()?;
    disc.validate()?;
    let spectrum = OperatorSpectrum::new(params, disc.modes);
    let radii = (1..=disc.modes)
        .map(|j| {
            let m = ModeCoefficients::from_spectrum(&spectrum, j);
            let amp = match scheme {
                SchemeKind::Beta => beta_amplification_mode(&m, disc.dt, disc.beta, disc.theta)?,
                SchemeKind::DirichletNeumann => dn_amplification_mode(&m, disc.dt)?,
                SchemeKind::Monolithic => {
                    return Err(Error::Invalid(
                        "the monolithic solution has no amplification matrix".into(),
                    ))
                }
            };
            Ok(amp.radius)
        })
        .collect::<Result<Vec<T>>>()?;
    let worst_mode = radii
        .iter()
        .enumerate()
        .fold((0, T::neg_infinity()), |(bi, br), (i, &r)| if r > br { (i, r) } else { (bi, br) })
        .0
        + 1;
    let stable = radii.iter().all(|&r| is_stable_radius(r));
    Ok(StabilityReport {
        scheme,
        stable,
        dn_ratio: dn_instability_criterion(&params.geometry, &params.fluid, &params.wall).ratio,
        worst_mode,
        radii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(dt: f64, modes: usize) -> Discretization<f64> {
        Discretization {
            modes,
            dt,
            ..Default::default()
        }
    }

    #[test]
    fn beta_benchmark_is_stable() {
        let r = stability_report(&ProblemParams::benchmark(1.1), &disc(1e-4, 64), SchemeKind::Beta).unwrap();
        assert!(r.stable);
        assert_eq!(r.radii.len(), 64);
        assert!(r.radii.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn dn_light_wall_fails_in_mode_one() {
        let r = stability_report(&ProblemParams::benchmark(1.1), &disc(1e-4, 64), SchemeKind::DirichletNeumann)
            .unwrap();
        assert!(!r.stable);
        assert_eq!(r.worst_mode, 1);
        assert!(r.dn_ratio < 1.0);
        assert_eq!(r.verdict(), "unstable");
    }

    #[test]
    fn monolithic_is_rejected() {
        assert!(stability_report(&ProblemParams::benchmark(1.1), &disc(1e-4, 4), SchemeKind::Monolithic).is_err());
    }
}
