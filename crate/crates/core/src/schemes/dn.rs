use super::{SchemeContext, SchemeState};
use crate::model::ModalVector;
use crate::scalar::Real;

/// Modal amplitudes beyond this are treated as a blown-up run.
pub const DIVERGENCE_THRESHOLD: f64 = 1e300;

/// The step at which a run left the finite range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diverged {
    pub step: usize,
}

impl std::fmt::Display for Diverged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "diverged at step {}", self.step)
    }
}

impl std::error::Error for Diverged {}

/// One step of the explicit Dirichlet-Neumann coupling. The fluid sees the
/// wall acceleration of the previous step, so per mode
///
/// ```text
/// rho_s h (eta^{n+1} - 2 eta^n + eta^{n-1}) / dt^2
///     + rho_f mu_j (eta^n - 2 eta^{n-1} + eta^{n-2}) / dt^2
///     + d (eta^{n+1} - eta^{n-1}) / (2 dt) + ell_j eta^n = f_j(t^n)
/// ```
///
/// where `f` is the linear inlet/outlet pressure profile. The returned
/// pressure trace is the one computed by the fluid step at `t^n`.
pub fn dn_step<T: Real>(state: &SchemeState<T>, ctx: &SchemeContext<T>) -> Result<SchemeState<T>, Diverged> {
    let s = &ctx.spectrum;
    let dt = ctx.dt;
    let two = T::lit(2.0);
    let dt2 = dt * dt;
    let forcing = ctx.lift(state.t);
    let modes = ctx.modes();
    let step = state.step + 1;
    let limit = T::lit(DIVERGENCE_THRESHOLD);

    let mut next = SchemeState {
        eta: ModalVector::zeros(modes),
        eta_prev: state.eta.clone(),
        eta_prev2: state.eta_prev.clone(),
        u_gamma: ModalVector::zeros(modes),
        u_half: ModalVector::zeros(modes),
        p_gamma: ModalVector::zeros(modes),
        step,
        t: ctx.time(step),
    };
    for k in 0..modes {
        let (e0, e1, e2) = (state.eta[k], state.eta_prev[k], state.eta_prev2[k]);
        let lagged_accel = (e0 - two * e1 + e2) / dt2;
        let fluid_load = forcing[k] - s.rho_f * s.mu[k] * lagged_accel;
        let d = s.damping[k] / (two * dt);
        let inertia = s.surface_mass / dt2;
        let eta_new = (inertia * (two * e0 - e1) + d * e1 + fluid_load - s.ell[k] * e0) / (inertia + d);
        if !eta_new.is_finite() || eta_new.abs() > limit {
            return Err(Diverged { step });
        }
        next.eta[k] = eta_new;
        next.u_gamma[k] = (eta_new - e0) / dt;
        next.u_half[k] = next.u_gamma[k];
        next.p_gamma[k] = fluid_load;
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Discretization, ProblemParams};

    fn ctx(rho_s: f64, p_max: f64) -> SchemeContext<f64> {
        let mut p = ProblemParams::benchmark(rho_s);
        p.pulse.p_max = p_max;
        let d = Discretization {
            modes: 16,
            ..Default::default()
        };
        SchemeContext::new(p, &d).unwrap()
    }

    #[test]
    fn rest_stays_at_rest() {
        let c = ctx(1.1, 0.0);
        let mut s = SchemeState::at_rest(16);
        for _ in 0..500 {
            s = dn_step(&s, &c).unwrap();
        }
        assert_eq!(s.eta.max_abs(), 0.0);
    }

    #[test]
    fn light_wall_blows_up() {
        let c = ctx(1.1, 2e4);
        let mut s = SchemeState::at_rest(16);
        let mut at_pulse_end = None;
        let mut blown = false;
        while s.t < 0.012 - 1e-12 {
            match dn_step(&s, &c) {
                Ok(n) => s = n,
                Err(_) => {
                    blown = true;
                    break;
                }
            }
            if (s.t - 0.005).abs() < 1e-12 {
                at_pulse_end = Some(s.eta.max_abs());
            }
            if let Some(a) = at_pulse_end {
                if s.eta.max_abs() > 1e6 * a {
                    blown = true;
                    break;
                }
            }
        }
        assert!(blown);
    }

    #[test]
    fn heavy_wall_stays_bounded() {
        let c = ctx(1e4, 2e4);
        let mut s = SchemeState::at_rest(16);
        let mut peak: f64 = 0.0;
        for _ in 0..120 {
            s = dn_step(&s, &c).unwrap();
            peak = peak.max(s.eta.max_abs());
        }
        assert!(peak.is_finite() && peak < 1.0, "{peak}");
    }
}
