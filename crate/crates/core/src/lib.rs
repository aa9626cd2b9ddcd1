//! Modal laboratory for partitioned fluid-structure splitting schemes.
//!
//! The model problem is an inviscid fluid in the rectangle
//! `(0, L) x (0, R)` coupled to a generalized string on the wall `r = R`.
//! Every operator acting on wall traces is diagonal in the sine basis, so
//! the kinematically coupled beta-scheme, the Dirichlet-Neumann scheme and
//! the exact coupled solution all reduce to independent per-mode
//! recurrences that can be simulated and analysed exactly.

pub mod error;
pub mod io;
pub mod model;
pub mod pressure;
pub mod scalar;
pub mod schemes;
pub mod spectral;
pub mod stability;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ModalVectorF64 = model::ModalVector<f64>;
pub type ModalVectorF32 = model::ModalVector<f32>;
pub type ProblemParamsF64 = model::ProblemParams<f64>;
pub type ProblemParamsF32 = model::ProblemParams<f32>;
pub type DiscretizationF64 = model::Discretization<f64>;
pub type OperatorSpectrumF64 = spectral::OperatorSpectrum<f64>;
pub type OperatorSpectrumF32 = spectral::OperatorSpectrum<f32>;
pub type PressureFieldF64 = pressure::PressureField<f64>;
pub type SchemeStateF64 = schemes::SchemeState<f64>;
pub type TimeSeriesF64 = schemes::TimeSeries<f64>;
pub type StabilityReportF64 = stability::StabilityReport<f64>;
pub type ConvergenceTableF64 = stability::ConvergenceTable<f64>;
pub type ThetaRegionF64 = stability::ThetaRegion<f64>;
pub type RunConfigF64 = io::RunConfig<f64>;
