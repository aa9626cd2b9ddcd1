//! Physical parameters, the inlet pulse and the sine basis on the
//! deformable wall.

mod basis;
mod params;
mod pulse;

pub use basis::{modal_to_trace, trace_to_modal, uniform_grid, ModalVector, SineBasis};
pub use params::{
    Discretization, FluidParams, Geometry, ProblemParams, PulseParams, WallParams,
};
pub use pulse::{inlet_pressure, outlet_pressure};
