//! Amplification-matrix stability analysis, parameter sweeps and temporal
//! convergence studies.

mod amplification;
mod convergence;
pub mod eig;
mod region;
mod report;
mod sweep;

pub use amplification::{
    beta_amplification, beta_amplification_mode, dn_amplification, dn_amplification_mode, explicit_critical_dt,
    Amplification, ModeCoefficients,
};
pub use convergence::{convergence_study, ConvergenceRow, ConvergenceTable, FieldErrors, REFERENCE_FINE_DT};
pub use region::{theta_region, ThetaRegion};
pub use report::{is_stable_radius, stability_report, StabilityReport, STABILITY_TOLERANCE};
pub use sweep::{geomspace, linspace, sweep, threads_from_env, SweepParameter, SweepRow, THREADS_ENV};
