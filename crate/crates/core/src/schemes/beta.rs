use super::{SchemeContext, SchemeState};
use crate::model::ModalVector;
use crate::scalar::Real;

/// History level `eta^{-1}` for the three-level wall scheme, from a
/// second-order Taylor expansion about `t = 0`:
/// `eta0 - dt u0 + dt^2/2 (beta p0 - ell eta0 - d u0) / (rho_s h)`.
pub fn theta_startup<T: Real>(
    eta0: &ModalVector<T>,
    u0: &ModalVector<T>,
    p0: &ModalVector<T>,
    ctx: &SchemeContext<T>,
) -> ModalVector<T> {
    let s = &ctx.spectrum;
    let dt = ctx.dt;
    let half_dt2 = dt * dt / T::lit(2.0);
    ModalVector::from_fn(eta0.modes(), |j| {
        let k = j - 1;
        let accel = (ctx.beta * p0[k] - s.ell[k] * eta0[k] - s.damping[k] * u0[k]) / s.surface_mass;
        eta0[k] - dt * u0[k] + half_dt2 * accel
    })
}

/// One step of the kinematically coupled beta-scheme.
///
/// Fluid sub-step: the Robin pressure problem with datum `beta p^n` gives
/// `p^{n+1}_j = p_ext,j(t^{n+1}) + beta lambda_j p^n_j`, and the structure
/// inertia in the Robin condition advances the wall velocity to `u^{n+1/2}`.
///
/// Structure sub-step, loaded by `beta p^{n+1}`:
///
/// ```text
/// rho_s h (eta^{n+1} - 2 eta^n + eta^{n-1}) / dt^2
///     + d (eta^{n+1} - eta^{n-1}) / (2 dt)
///     + ell (theta eta^{n+1} + (1 - 2 theta) eta^n + theta eta^{n-1}) = beta p^{n+1}
/// ```
///
/// after which `u^{n+1} = (eta^{n+1} - eta^n) / dt`.
pub fn beta_step<T: Real>(state: &SchemeState<T>, ctx: &SchemeContext<T>) -> SchemeState<T> {
    let s = &ctx.spectrum;
    let (dt, beta, theta) = (ctx.dt, ctx.beta, ctx.theta);
    let two = T::lit(2.0);
    let step = state.step + 1;
    let t = ctx.time(step);
    let p_ext = ctx.p_ext(t);
    let a = s.surface_mass;
    let inertia = a / (dt * dt);
    let modes = ctx.modes();

    let mut next = SchemeState {
        eta: ModalVector::zeros(modes),
        eta_prev: state.eta.clone(),
        eta_prev2: state.eta_prev.clone(),
        u_gamma: ModalVector::zeros(modes),
        u_half: ModalVector::zeros(modes),
        p_gamma: ModalVector::zeros(modes),
        step,
        t,
    };
    for k in 0..modes {
        let (eta, eta_prev, p_old) = (state.eta[k], state.eta_prev[k], state.p_gamma[k]);
        let p_new = p_ext[k] + beta * s.lambda[k] * p_old;
        let u_half = state.u_gamma[k] + dt / a * (p_new - beta * p_old);

        let (ell, d) = (s.ell[k], s.damping[k] / (two * dt));
        let lhs = inertia + theta * ell + d;
        let rhs = beta * p_new + inertia * (two * eta - eta_prev)
            - ell * ((T::one() - two * theta) * eta + theta * eta_prev)
            + d * eta_prev;
        let eta_new = rhs / lhs;

        next.eta[k] = eta_new;
        next.u_gamma[k] = (eta_new - eta) / dt;
        next.u_half[k] = u_half;
        next.p_gamma[k] = p_new;
    }
    next
}
