use crate::error::Result;
use crate::model::{inlet_pressure, outlet_pressure, Discretization, ModalVector, ProblemParams};
use crate::pressure::{compute_p_ext, linear_lift_modal};
use crate::scalar::Real;
use crate::spectral::OperatorSpectrum;

/// Everything a stepper needs besides the state: parameters, spectra and
/// the time-discretization knobs.
#[derive(Debug, Clone)]
pub struct SchemeContext<T> {
    pub params: ProblemParams<T>,
    pub spectrum: OperatorSpectrum<T>,
    pub dt: T,
    pub beta: T,
    pub theta: T,
}

impl<T: Real> SchemeContext<T> {
    pub fn new(params: ProblemParams<T>, disc: &Discretization<T>) -> Result<Self> {
        params.validate()?;
        disc.validate()?;
        Ok(Self {
            spectrum: OperatorSpectrum::new(&params, disc.modes),
            params,
            dt: disc.dt,
            beta: disc.beta,
            theta: disc.theta,
        })
    }

    pub fn modes(&self) -> usize {
        self.spectrum.modes()
    }

    pub fn length(&self) -> T {
        self.params.geometry.length
    }

    pub fn time(&self, step: usize) -> T {
        self.dt * T::from_usize_lossy(step)
    }

    pub fn inlet(&self, t: T) -> T {
        inlet_pressure(t, &self.params.pulse)
    }

    /// Sine coefficients of the linear inlet-to-outlet pressure profile at `t`.
    /// This is the external load seen by the wall when the fluid is driven
    /// through its velocity (Neumann data on the wall).
    pub fn lift(&self, t: T) -> ModalVector<T> {
        let pulse = &self.params.pulse;
        linear_lift_modal(inlet_pressure(t, pulse), outlet_pressure(t, pulse), self.modes())
    }

    /// External part of the Robin pressure trace at `t`.
    pub fn p_ext(&self, t: T) -> ModalVector<T> {
        let pulse = &self.params.pulse;
        compute_p_ext(inlet_pressure(t, pulse), outlet_pressure(t, pulse), &self.spectrum)
    }
}
