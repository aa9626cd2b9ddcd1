use super::{TimeRecord, TimeSeries};
use crate::error::{Error, Result};
use crate::model::{inlet_pressure, outlet_pressure, ModalVector, ProblemParams};
use crate::pressure::linear_lift_modal;
use crate::scalar::Real;
use crate::spectral::OperatorSpectrum;

/// Response of `m x'' + c x' + k x = f(t)` from rest, accumulated panel by
/// panel with composite Simpson quadrature of the Duhamel integral
///
/// ```text
/// x(t) = 1/(m w) int_0^t f(s) exp(-sigma (t - s)) sin(w (t - s)) ds
/// ```
///
/// with `sigma = c / 2m` and `w` the damped frequency. The integral is split
/// as `sin(wt) C(t) - cos(wt) S(t)`; `C` and `S` carry the decay factor of the
/// current time so they never grow.
#[derive(Debug, Clone)]
pub struct DuhamelMode<T> {
    mass: T,
    damping: T,
    stiffness: T,
    sigma: T,
    omega: T,
    cos_acc: T,
    sin_acc: T,
    t: T,
}

impl<T: Real> DuhamelMode<T> {
    /// Fails for critically damped or overdamped modes.
    pub fn new(mass: T, damping: T, stiffness: T) -> Result<Self> {
        let sigma = damping / (T::lit(2.0) * mass);
        let w2 = stiffness / mass - sigma * sigma;
        if !(w2 > T::zero()) {
            return Err(Error::Invalid(format!(
                "mode is not underdamped (mass {mass}, damping {damping}, stiffness {stiffness})"
            )));
        }
        Ok(Self {
            mass,
            damping,
            stiffness,
            sigma,
            omega: w2.sqrt(),
            cos_acc: T::zero(),
            sin_acc: T::zero(),
            t: T::zero(),
        })
    }

    pub fn time(&self) -> T {
        self.t
    }

    pub fn frequency(&self) -> T {
        self.omega
    }

    /// Integrates over `[t, t + 2h]` given the forcing at the panel's start,
    /// midpoint and end.
    pub fn advance(&mut self, h: T, f0: T, f1: T, f2: T) {
        let (s0, s1, s2) = (self.t, self.t + h, self.t + h + h);
        let decay_half = (-self.sigma * h).exp();
        let decay = decay_half * decay_half;
        let w = self.omega;
        let third = h / T::lit(3.0);
        let four = T::lit(4.0);
        let c = f0 * decay * (w * s0).cos() + four * f1 * decay_half * (w * s1).cos() + f2 * (w * s2).cos();
        let s = f0 * decay * (w * s0).sin() + four * f1 * decay_half * (w * s1).sin() + f2 * (w * s2).sin();
        self.cos_acc = decay * self.cos_acc + third * c;
        self.sin_acc = decay * self.sin_acc + third * s;
        self.t = s2;
    }

    pub fn displacement(&self) -> T {
        let (s, c) = (self.omega * self.t).sin_cos();
        (s * self.cos_acc - c * self.sin_acc) / (self.mass * self.omega)
    }

    pub fn velocity(&self) -> T {
        let (s, c) = (self.omega * self.t).sin_cos();
        let sine_part = s * self.cos_acc - c * self.sin_acc;
        let cosine_part = c * self.cos_acc + s * self.sin_acc;
        (self.omega * cosine_part - self.sigma * sine_part) / (self.mass * self.omega)
    }

    /// Acceleration from the equation of motion for the current forcing.
    pub fn acceleration(&self, forcing: T) -> T {
        (forcing - self.damping * self.velocity() - self.stiffness * self.displacement()) / self.mass
    }
}

/// Modal displacement, velocity and pressure trace at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSnapshot<T> {
    pub t: T,
    pub eta: ModalVector<T>,
    pub u: ModalVector<T>,
    pub p: ModalVector<T>,
}

/// Exact coupled solution from rest: per mode
/// `(rho_s h + rho_f mu_j) eta'' + d_j eta' + ell_j eta = f_j(t)`, where `f` is
/// the linear inlet/outlet pressure profile. The wall pressure is recovered
/// as `f_j - rho_f mu_j eta_j''`.
#[derive(Debug, Clone)]
pub struct MonolithicOracle<T> {
    params: ProblemParams<T>,
    spectrum: OperatorSpectrum<T>,
    fine_dt: T,
}

impl<T: Real> MonolithicOracle<T> {
    pub fn new(params: ProblemParams<T>, modes: usize, fine_dt: T) -> Result<Self> {
        params.validate()?;
        if !(fine_dt > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "fine_dt",
                value: format!("{fine_dt}"),
                allowed: "fine_dt > 0",
            });
        }
        Ok(Self {
            spectrum: OperatorSpectrum::new(&params, modes),
            params,
            fine_dt,
        })
    }

    pub fn spectrum(&self) -> &OperatorSpectrum<T> {
        &self.spectrum
    }

    fn modes_from_rest(&self) -> Result<Vec<DuhamelMode<T>>> {
        let s = &self.spectrum;
        (1..=s.modes())
            .map(|j| DuhamelMode::new(s.coupled_mass(j), s.damping[j - 1], s.ell[j - 1]))
            .collect()
    }

    fn forcing(&self, t: T) -> ModalVector<T> {
        let pulse = &self.params.pulse;
        linear_lift_modal(inlet_pressure(t, pulse), outlet_pressure(t, pulse), self.spectrum.modes())
    }

    fn snapshot(&self, modes: &[DuhamelMode<T>]) -> ModalSnapshot<T> {
        let t = modes.first().map_or(T::zero(), |m| m.time());
        let f = self.forcing(t);
        let s = &self.spectrum;
        let n = s.modes();
        ModalSnapshot {
            t,
            eta: ModalVector::from_fn(n, |j| modes[j - 1].displacement()),
            u: ModalVector::from_fn(n, |j| modes[j - 1].velocity()),
            p: ModalVector::from_fn(n, |j| {
                f[j - 1] - s.rho_f * s.mu[j - 1] * modes[j - 1].acceleration(f[j - 1])
            }),
        }
    }

    fn advance_all(&self, modes: &mut [DuhamelMode<T>], h: T) {
        let t0 = modes[0].time();
        let f0 = self.forcing(t0);
        let f1 = self.forcing(t0 + h);
        let f2 = self.forcing(t0 + h + h);
        for (k, m) in modes.iter_mut().enumerate() {
            m.advance(h, f0[k], f1[k], f2[k]);
        }
    }

    /// State at time `t`; the panel width is shrunk so that `t` falls on a
    /// panel boundary with step at most `fine_dt`.
    pub fn state_at(&self, t: T) -> Result<ModalSnapshot<T>> {
        let mut modes = self.modes_from_rest()?;
        let panels = (t / (self.fine_dt + self.fine_dt)).ceil().to_usize().unwrap_or(0);
        if panels > 0 {
            let h = t / T::from_usize_lossy(2 * panels);
            for _ in 0..panels {
                self.advance_all(&mut modes, h);
            }
        }
        Ok(self.snapshot(&modes))
    }

    /// Snapshots every `sample_every` panels (panel width `2 fine_dt`) up to
    /// `t_end`, starting with the state at rest.
    pub fn run(&self, t_end: T, sample_every: usize) -> Result<Vec<ModalSnapshot<T>>> {
        let sample_every = sample_every.max(1);
        let mut modes = self.modes_from_rest()?;
        let h = self.fine_dt;
        let panels = (t_end / (h + h)).round().to_usize().unwrap_or(0);
        let mut out = vec![self.snapshot(&modes)];
        for p in 1..=panels {
            self.advance_all(&mut modes, h);
            if p % sample_every == 0 {
                out.push(self.snapshot(&modes));
            }
        }
        Ok(out)
    }
}

/// Reference trajectory sampled on every quadrature panel (`2 fine_dt`).
pub fn monolithic_solve<T: Real>(
    params: &ProblemParams<T>,
    modes: usize,
    t_end: T,
    fine_dt: T,
) -> Result<TimeSeries<T>> {
    let oracle = MonolithicOracle::new(*params, modes, fine_dt)?;
    let length = params.geometry.length;
    let records = oracle
        .run(t_end, 1)?
        .into_iter()
        .map(|s| TimeRecord::from_modal(s.t, &s.eta, &s.p, &s.u, length, inlet_pressure(s.t, &params.pulse)))
        .collect();
    Ok(TimeSeries {
        records,
        diverged_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unforced_mode_stays_at_rest() {
        let mut m = DuhamelMode::new(2.0, 0.0, 50.0).unwrap();
        for _ in 0..100 {
            m.advance(1e-3, 0.0, 0.0, 0.0);
        }
        assert_eq!(m.displacement(), 0.0);
        assert_eq!(m.velocity(), 0.0);
    }

    #[test]
    fn constant_forcing_closed_form() {
        let (mass, k, c): (f64, f64, f64) = (7.57, 4.07e5, 1.3e4);
        let w = (k / mass).sqrt();
        let h = 1e-6;
        let mut m = DuhamelMode::new(mass, 0.0, k).unwrap();
        for _ in 0..5000 {
            m.advance(h, c, c, c);
        }
        let t = m.time();
        let exact = c / k * (1.0 - (w * t).cos());
        let exact_v = c / k * w * (w * t).sin();
        assert!((m.displacement() - exact).abs() <= 1e-8 * exact.abs(), "{} vs {exact}", m.displacement());
        assert!((m.velocity() - exact_v).abs() <= 1e-8 * (c / k * w));
    }

    #[test]
    fn damped_constant_forcing() {
        // static limit of a damped oscillator
        let (mass, damp, k, c): (f64, f64, f64, f64) = (1.0, 4.0, 100.0, 5.0);
        let mut m = DuhamelMode::new(mass, damp, k).unwrap();
        for _ in 0..20000 {
            m.advance(5e-4, c, c, c);
        }
        assert!((m.displacement() - c / k).abs() < 1e-9);
        assert!(m.velocity().abs() < 1e-9);
        assert!(DuhamelMode::new(1.0, 20.0, 100.0).is_err());
    }

    #[test]
    fn oracle_self_convergence() {
        let p = ProblemParams::<f64>::benchmark(1.1);
        let coarse = MonolithicOracle::new(p, 16, 1e-6).unwrap().state_at(0.01).unwrap();
        let fine = MonolithicOracle::new(p, 16, 5e-7).unwrap().state_at(0.01).unwrap();
        let diff = (&coarse.eta - &fine.eta).coeff_norm() / fine.eta.coeff_norm();
        assert!(diff < 1e-8, "{diff}");
    }

    #[test]
    fn zero_pulse_zero_response() {
        let mut p = ProblemParams::<f64>::benchmark(1.1);
        p.pulse.p_max = 0.0;
        let s = monolithic_solve(&p, 8, 0.002, 1e-5).unwrap();
        assert!(s.records.iter().all(|r| r.eta_maxmode == 0.0));
    }
}
