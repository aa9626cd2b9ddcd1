//! Time integrators for the modal fluid-structure system.
//!
//! * [`beta_step`]: the kinematically coupled beta-scheme, a Robin pressure
//!   sub-step followed by a three-level theta-scheme for the wall;
//! * [`dn_step`]: the explicit Dirichlet-Neumann coupling, which lags the
//!   added-mass term by one step;
//! * [`MonolithicOracle`]: the exact coupled solution, per mode a driven
//!   oscillator with the added mass included, integrated by Duhamel's formula.

mod beta;
mod context;
mod dn;
mod monolithic;
mod run;
mod series;
mod state;

pub use beta::{beta_step, theta_startup};
pub use context::SchemeContext;
pub use dn::{dn_step, Diverged, DIVERGENCE_THRESHOLD};
pub use monolithic::{monolithic_solve, DuhamelMode, ModalSnapshot, MonolithicOracle};
pub use run::{simulate, SchemeKind, SimulationOutcome, TimeRecord, TimeSeries};
pub use series::pressure_series;
pub use state::SchemeState;
