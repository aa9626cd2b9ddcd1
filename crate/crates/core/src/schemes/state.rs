use super::SchemeContext;
use crate::model::ModalVector;
use crate::scalar::Real;

/// Modal state of a stepper at time level `step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeState<T> {
    /// Wall displacement `eta^n`, cm.
    pub eta: ModalVector<T>,
    /// `eta^{n-1}`
    pub eta_prev: ModalVector<T>,
    /// `eta^{n-2}`, only read by the Dirichlet-Neumann scheme.
    pub eta_prev2: ModalVector<T>,
    /// Wall velocity `u_r` on the wall, cm/s.
    pub u_gamma: ModalVector<T>,
    /// Velocity after the fluid sub-step of the beta-scheme (diagnostic).
    pub u_half: ModalVector<T>,
    /// Pressure trace on the wall, dyn/cm^2.
    pub p_gamma: ModalVector<T>,
    pub step: usize,
    pub t: T,
}

impl<T: Real> SchemeState<T> {
    /// Fluid and wall at rest with zero pressure.
    pub fn at_rest(modes: usize) -> Self {
        let z = ModalVector::zeros(modes);
        Self {
            eta: z.clone(),
            eta_prev: z.clone(),
            eta_prev2: z.clone(),
            u_gamma: z.clone(),
            u_half: z.clone(),
            p_gamma: z,
            step: 0,
            t: T::zero(),
        }
    }

    /// Initial state with given displacement, velocity and pressure; the
    /// history levels are filled by Taylor expansion.
    pub fn initial(
        eta0: ModalVector<T>,
        u0: ModalVector<T>,
        p0: ModalVector<T>,
        ctx: &SchemeContext<T>,
    ) -> Self {
        let eta_prev = super::theta_startup(&eta0, &u0, &p0, ctx);
        let dt = ctx.dt;
        let eta_prev2 = &eta0 - &(&u0 * (dt + dt));
        Self {
            eta: eta0,
            eta_prev,
            eta_prev2,
            u_half: u0.clone(),
            u_gamma: u0,
            p_gamma: p0,
            step: 0,
            t: T::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.eta.is_finite() && self.u_gamma.is_finite() && self.p_gamma.is_finite()
    }
}
