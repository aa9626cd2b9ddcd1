use super::{beta_step, dn_step, MonolithicOracle, SchemeContext, SchemeState};
use crate::error::{Error, Result};
use crate::model::{inlet_pressure, Discretization, ModalVector, ProblemParams};
use crate::scalar::Real;

/// Quadrature step used when the oracle is run through [`simulate`].
const ORACLE_MAX_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Beta,
    DirichletNeumann,
    Monolithic,
}

impl SchemeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::Beta => "beta",
            SchemeKind::DirichletNeumann => "dn",
            SchemeKind::Monolithic => "monolithic",
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(SchemeKind::Beta),
            "dn" => Ok(SchemeKind::DirichletNeumann),
            "monolithic" => Ok(SchemeKind::Monolithic),
            other => Err(Error::Invalid(format!(
                "unknown scheme `{other}` (expected beta, dn or monolithic)"
            ))),
        }
    }
}

/// Diagnostics of one time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeRecord<T> {
    pub t: T,
    /// Displacement at `z = L/2`.
    pub eta_mid: T,
    /// Largest modal displacement amplitude.
    pub eta_maxmode: T,
    /// Wall pressure at `z = L/2`.
    pub p_mid: T,
    /// Wall velocity at `z = L/2`.
    pub u_mid: T,
    /// Inlet pressure at `t`.
    pub p_in: T,
}

impl<T: Real> TimeRecord<T> {
    pub fn from_modal(
        t: T,
        eta: &ModalVector<T>,
        p: &ModalVector<T>,
        u: &ModalVector<T>,
        length: T,
        p_in: T,
    ) -> Self {
        let mid = length / T::lit(2.0);
        Self {
            t,
            eta_mid: eta.eval(mid, length),
            eta_maxmode: eta.max_abs(),
            p_mid: p.eval(mid, length),
            u_mid: u.eval(mid, length),
            p_in,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    pub records: Vec<TimeRecord<T>>,
    /// Step index at which the run was stopped by the divergence guard.
    pub diverged_at: Option<usize>,
}

impl<T: Real> TimeSeries<T> {
    pub fn is_diverged(&self) -> bool {
        self.diverged_at.is_some()
    }

    /// Largest `eta_maxmode` over records with `t` in `[from, to]`.
    pub fn peak_amplitude(&self, from: T, to: T) -> T {
        self.records
            .iter()
            .filter(|r| r.t >= from && r.t <= to)
            .fold(T::zero(), |m, r| m.max(r.eta_maxmode))
    }
}

#[derive(Debug, Clone)]
pub struct SimulationOutcome<T> {
    pub series: TimeSeries<T>,
    /// Last state of the stepping schemes (absent for the oracle and for
    /// diverged runs).
    pub final_state: Option<SchemeState<T>>,
}

/// Runs a scheme from rest up to `t_end` with the step of `disc`, recording
/// every time level including `t = 0`.
pub fn simulate<T: Real>(
    kind: SchemeKind,
    params: &ProblemParams<T>,
    disc: &Discretization<T>,
    t_end: T,
) -> Result<SimulationOutcome<T>> {
    let ctx = SchemeContext::new(*params, disc)?;
    let n_steps = (t_end / disc.dt).round().to_usize().unwrap_or(0);
    let length = params.geometry.length;
    let record = |s: &SchemeState<T>| {
        TimeRecord::from_modal(s.t, &s.eta, &s.p_gamma, &s.u_gamma, length, inlet_pressure(s.t, &params.pulse))
    };

    match kind {
        SchemeKind::Monolithic => {
            let panels_per_step = (disc.dt / T::lit(2.0 * ORACLE_MAX_STEP)).ceil().to_usize().unwrap_or(1).max(1);
            let fine_dt = disc.dt / T::from_usize_lossy(2 * panels_per_step);
            let oracle = MonolithicOracle::new(*params, disc.modes, fine_dt)?;
            let records = oracle
                .run(disc.dt * T::from_usize_lossy(n_steps), panels_per_step)?
                .into_iter()
                .map(|s| TimeRecord::from_modal(s.t, &s.eta, &s.p, &s.u, length, inlet_pressure(s.t, &params.pulse)))
                .collect();
            Ok(SimulationOutcome {
                series: TimeSeries {
                    records,
                    diverged_at: None,
                },
                final_state: None,
            })
        }
        SchemeKind::Beta | SchemeKind::DirichletNeumann => {
            let mut state = SchemeState::at_rest(disc.modes);
            let mut records = Vec::with_capacity(n_steps + 1);
            records.push(record(&state));
            let mut diverged_at = None;
            for _ in 0..n_steps {
                let next = match kind {
                    SchemeKind::Beta => {
                        let n = beta_step(&state, &ctx);
                        if n.eta.max_abs() > T::lit(super::DIVERGENCE_THRESHOLD) || !n.is_finite() {
                            Err(super::Diverged { step: n.step })
                        } else {
                            Ok(n)
                        }
                    }
                    _ => dn_step(&state, &ctx),
                };
                match next {
                    Ok(n) => {
                        state = n;
                        records.push(record(&state));
                    }
                    Err(d) => {
                        diverged_at = Some(d.step);
                        break;
                    }
                }
            }
            Ok(SimulationOutcome {
                series: TimeSeries {
                    records,
                    diverged_at,
                },
                final_state: diverged_at.is_none().then_some(state),
            })
        }
    }
}
