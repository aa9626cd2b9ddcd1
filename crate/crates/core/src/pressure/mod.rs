//! The pressure sub-problem: Laplace equation on the channel with Dirichlet
//! inlet/outlet data, a symmetry condition on the axis and a Robin condition
//! `p + alpha dp/dn = w` on the wall.
//!
//! Two independent routes are provided: separation of variables per sine
//! mode ([`solve_robin_modal`]) and a second-order finite-difference scheme
//! on the tensor grid ([`solve_robin_fd`]).

mod banded;
mod fd;
mod grid;
mod lift;
mod modal;
mod validate;

pub use banded::BandedCholesky;
pub use fd::{discrete_s_matrix, solve_robin_fd, DenseMatrix, RobinFdSolver, DEFAULT_FD_TOLERANCE};
pub use grid::{PressureField, PressureGrid};
pub use lift::{compute_p_ext, linear_lift_modal};
pub use modal::{robin_mode_normal_derivative, solve_robin_modal};
pub use validate::{validate_pressure, PressureValidationRow};

use crate::model::ModalVector;

/// Right-hand side of the Robin condition on the wall.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaData<T> {
    Modal(ModalVector<T>),
    /// Samples on the axial grid, endpoints included.
    Trace(Vec<T>),
}

/// Boundary data of one pressure solve. Inlet and outlet values are constant
/// across the channel height.
#[derive(Debug, Clone, PartialEq)]
pub struct RobinProblemData<T> {
    pub gamma: GammaData<T>,
    pub inlet: T,
    pub outlet: T,
}

impl<T: crate::Real> RobinProblemData<T> {
    /// Robin datum only, homogeneous inlet/outlet.
    pub fn homogeneous(gamma: GammaData<T>) -> Self {
        Self {
            gamma,
            inlet: T::zero(),
            outlet: T::zero(),
        }
    }
}
