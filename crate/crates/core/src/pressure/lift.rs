use crate::model::ModalVector;
use crate::scalar::Real;
use crate::spectral::OperatorSpectrum;

/// Sine coefficients of `p_in (1 - z/L) + p_out z/L`:
/// `c_j = 2 / (j pi) * (p_in + (-1)^(j+1) p_out)`.
pub fn linear_lift_modal<T: Real>(p_in: T, p_out: T, modes: usize) -> ModalVector<T> {
    ModalVector::from_fn(modes, |j| {
        let sign = if j % 2 == 1 { T::one() } else { -T::one() };
        T::lit(2.0) / (T::from_usize_lossy(j) * T::PI()) * (p_in + sign * p_out)
    })
}

/// Wall trace of the pressure solution with inlet/outlet data and a zero
/// Robin datum.
///
/// The linear lift is harmonic, matches the inlet/outlet data and has zero
/// normal derivative on the wall and the axis, so the remaining correction
/// solves the Robin problem with datum `-p_lin` and `p_ext = (I - S) p_lin`.
/// Per mode this is `alpha / (mu_j + alpha) * c_j`.
pub fn compute_p_ext<T: Real>(p_in: T, p_out: T, spectrum: &OperatorSpectrum<T>) -> ModalVector<T> {
    let mut lift = linear_lift_modal(p_in, p_out, spectrum.modes());
    for (k, c) in lift.as_mut_slice().iter_mut().enumerate() {
        *c = *c * spectrum.alpha / (spectrum.mu[k] + spectrum.alpha);
    }
    lift
}
