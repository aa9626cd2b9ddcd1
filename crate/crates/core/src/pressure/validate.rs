use super::{solve_robin_fd, solve_robin_modal, GammaData, PressureGrid, RobinProblemData};
use crate::error::{Error, Result};
use crate::model::{ModalVector, ProblemParams};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureValidationRow<T> {
    /// Points per direction (`Nz = Nr`).
    pub grid_size: usize,
    /// Discrete L2 norm over the wall of the FD trace minus the modal trace.
    pub trace_error_l2: T,
    /// Observed order against the previous, coarser grid.
    pub observed_order: Option<T>,
}

/// Solves the homogeneous Robin problem with wall datum `w` on square grids
/// of the given sizes and compares the FD wall trace with the modal one.
pub fn validate_pressure<T: Real>(
    params: &ProblemParams<T>,
    w: &ModalVector<T>,
    grid_sizes: &[usize],
    tol: T,
) -> Result<Vec<PressureValidationRow<T>>> {
    params.validate()?;
    if grid_sizes.windows(2).any(|g| g[1] <= g[0]) {
        return Err(Error::Invalid("grid sizes must be strictly increasing".into()));
    }
    let (length, radius) = (params.geometry.length, params.geometry.radius);
    let data = RobinProblemData::homogeneous(GammaData::Modal(w.clone()));
    let mut rows: Vec<PressureValidationRow<T>> = Vec::with_capacity(grid_sizes.len());
    for &n in grid_sizes {
        let grid = PressureGrid::new(n, n, length, radius);
        let (_, fd) = solve_robin_fd(&data, params, grid, tol)?;
        let (exact, _) = solve_robin_modal(w, params, grid)?;
        let sum = fd
            .iter()
            .zip(exact.wall_trace())
            .fold(T::zero(), |acc, (&a, b)| acc + (a - b) * (a - b));
        let err = (sum * grid.hz()).sqrt();
        let observed_order = rows.last().map(|prev| {
            let h_prev = length / T::from_usize_lossy(prev.grid_size - 1);
            (prev.trace_error_l2 / err).ln() / (h_prev / grid.hz()).ln()
        });
        rows.push(PressureValidationRow {
            grid_size: n,
            trace_error_l2: err,
            observed_order,
        });
    }
    Ok(rows)
}
