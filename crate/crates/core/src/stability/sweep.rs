use rayon::prelude::*;

use super::report::{stability_report, StabilityReport};
use crate::error::{Error, Result};
use crate::model::{Discretization, ProblemParams};
use crate::scalar::Real;
use crate::schemes::SchemeKind;

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "FSI_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    RhoS,
    Beta,
    Theta,
    Dt,
    Radius,
    Length,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::RhoS => "rho_s",
            SweepParameter::Beta => "beta",
            SweepParameter::Theta => "theta",
            SweepParameter::Dt => "dt",
            SweepParameter::Radius => "R",
            SweepParameter::Length => "L",
        }
    }

    /// Copies of `params` and `disc` with this parameter set to `value`.
    pub fn apply<T: Real>(
        &self,
        params: &ProblemParams<T>,
        disc: &Discretization<T>,
        value: T,
    ) -> (ProblemParams<T>, Discretization<T>) {
        let (mut p, mut d) = (*params, *disc);
        match self {
            SweepParameter::RhoS => p.wall.rho_s = value,
            SweepParameter::Beta => d.beta = value,
            SweepParameter::Theta => d.theta = value,
            SweepParameter::Dt => d.dt = value,
            SweepParameter::Radius => p.geometry.radius = value,
            SweepParameter::Length => p.geometry.length = value,
        }
        (p, d)
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rho_s" => Ok(SweepParameter::RhoS),
            "beta" => Ok(SweepParameter::Beta),
            "theta" => Ok(SweepParameter::Theta),
            "dt" => Ok(SweepParameter::Dt),
            "r" => Ok(SweepParameter::Radius),
            "l" => Ok(SweepParameter::Length),
            _ => Err(Error::UnknownParameter(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub value: T,
    pub report: StabilityReport<T>,
}

/// `n` equally spaced values from `from` to `to` inclusive.
pub fn linspace<T: Real>(from: T, to: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let step = (to - from) / T::from_usize_lossy(n - 1);
            (0..n)
                .map(|i| if i + 1 == n { to } else { from + step * T::from_usize_lossy(i) })
                .collect()
        }
    }
}

/// `n` logarithmically spaced values from `from` to `to` inclusive; both
/// ends must be positive.
pub fn geomspace<T: Real>(from: T, to: T, n: usize) -> Vec<T> {
    linspace(from.ln(), to.ln(), n)
        .into_iter()
        .enumerate()
        .map(|(i, x)| match i {
            0 => from,
            _ if i + 1 == n => to,
            _ => x.exp(),
        })
        .collect()
}

/// Thread cap from `FSI_LAB_THREADS`; `None` when unset, empty or zero.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| (n > 0).then_some(n))
            .map_err(|_| Error::Invalid(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))),
    }
}

/// One stability report per value of `vary`, in input order. Points are
/// evaluated concurrently on at most `threads` workers (all cores if `None`).
pub fn sweep<T: Real>(
    params: &ProblemParams<T>,
    disc: &Discretization<T>,
    vary: SweepParameter,
    values: &[T],
    scheme: SchemeKind,
    threads: Option<usize>,
) -> Result<Vec<SweepRow<T>>> {
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start sweep workers: {e}")))?;
    pool.install(|| {
        values
            .par_iter()
            .map(|&value| {
                let (p, d) = vary.apply(params, disc, value);
                stability_report(&p, &d, scheme).map(|report| SweepRow { value, report })
            })
            .collect()
    })
}
