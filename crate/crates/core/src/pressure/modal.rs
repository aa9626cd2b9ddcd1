use super::{PressureField, PressureGrid};
use crate::error::{Error, Result};
use crate::model::{ModalVector, ProblemParams};
use crate::scalar::Real;
use crate::spectral::{apply_s_modal, OperatorSpectrum};

/// `cosh(k r) / (cosh(k R) + alpha k sinh(k R))`, evaluated without
/// forming the (possibly huge) hyperbolic functions.
fn radial_profile<T: Real>(k: T, r: T, radius: T, alpha: T) -> T {
    let e_r = (-(k * r) * T::lit(2.0)).exp();
    let e_big = (-(k * radius) * T::lit(2.0)).exp();
    (k * (r - radius)).exp() * (T::one() + e_r) / ((T::one() + e_big) + alpha * k * (T::one() - e_big))
}

/// Closed-form solution of the Robin problem with homogeneous inlet/outlet
/// data: mode `j` contributes `A_j cosh(k_j r) sin(k_j z)` with
/// `A_j = w_j / (cosh(k_j R) + alpha k_j sinh(k_j R))`.
///
/// Returns the field sampled on `grid` and the modal wall trace, which equals
/// `lambda_j w_j`.
pub fn solve_robin_modal<T: Real>(
    w: &ModalVector<T>,
    params: &ProblemParams<T>,
    grid: PressureGrid<T>,
) -> Result<(PressureField<T>, ModalVector<T>)> {
    if !w.is_finite() {
        return Err(Error::Invalid("Robin datum must be finite".into()));
    }
    let geom = &params.geometry;
    let alpha = params.mass_ratio();
    let mut field = PressureField::zeros(grid);
    for (idx, &wj) in w.as_slice().iter().enumerate() {
        if wj == T::zero() {
            continue;
        }
        let k = geom.wavenumber(idx + 1);
        let radial: Vec<T> = (0..grid.nr)
            .map(|j| radial_profile(k, grid.r(j), geom.radius, alpha))
            .collect();
        for i in 0..grid.nz {
            let s = wj * (k * grid.z(i)).sin();
            for (j, &rad) in radial.iter().enumerate() {
                let v = field.at(i, j) + s * rad;
                field.set(i, j, v);
            }
        }
    }
    let spectrum = OperatorSpectrum::new(params, w.modes());
    let trace = apply_s_modal(w, &spectrum)?;
    Ok((field, trace))
}

/// Outward normal derivative on the wall of the modal solution for datum
/// `w_j` in mode `j`: `A_j k_j sinh(k_j R)`.
pub fn robin_mode_normal_derivative<T: Real>(w_j: T, j: usize, params: &ProblemParams<T>) -> T {
    let k = params.geometry.wavenumber(j);
    let kr = k * params.geometry.radius;
    let alpha = params.mass_ratio();
    let amplitude = w_j / (kr.cosh() + alpha * k * kr.sinh());
    amplitude * k * kr.sinh()
}
