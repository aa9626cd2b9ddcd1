use crate::error::{Error, Result};
use crate::model::{Discretization, ModalVector, ProblemParams};
use crate::scalar::Real;
use crate::schemes::{simulate, MonolithicOracle, SchemeKind};

/// Quadrature step of the reference solution in convergence studies.
pub const REFERENCE_FINE_DT: f64 = 1e-7;

/// Largest quadrature step when the monolithic solution is the scheme under
/// study.
const ORACLE_MAX_STEP: f64 = 1e-6;

/// Relative L2 errors on the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldErrors<T> {
    pub eta: T,
    pub u: T,
    pub p: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub dt: T,
    /// `None` when the run diverged.
    pub errors: Option<FieldErrors<T>>,
    /// Observed order against the previous row; `None` on the first row and
    /// whenever either row diverged.
    pub orders: Option<FieldErrors<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable<T> {
    pub scheme: SchemeKind,
    pub t_eval: T,
    pub rows: Vec<ConvergenceRow<T>>,
}

fn relative_error<T: Real>(x: &ModalVector<T>, reference: &ModalVector<T>) -> T {
    let diff = (x - reference).coeff_norm();
    let norm = reference.coeff_norm();
    if norm > T::zero() {
        diff / norm
    } else {
        diff
    }
}

fn observed_order<T: Real>(e_prev: T, e: T, dt_prev: T, dt: T) -> T {
    (e_prev / e).ln() / (dt_prev / dt).ln()
}

/// Runs `scheme` from rest at each step of `dts` and compares displacement,
/// velocity and pressure at `t_eval` with the monolithic reference computed
/// at quadrature step `reference_dt`. `disc` supplies modes, beta and theta.
pub fn convergence_study<T: Real>(
    params: &ProblemParams<T>,
    disc: &Discretization<T>,
    dts: &[T],
    t_eval: T,
    scheme: SchemeKind,
    reference_dt: T,
) -> Result<ConvergenceTable<T>> {
    params.validate()?;
    disc.validate()?;
    if dts.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Invalid("convergence time steps must be strictly decreasing".into()));
    }
    if !(t_eval > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "t_eval",
            value: format!("{t_eval}"),
            allowed: "t_eval > 0",
        });
    }
    for &dt in dts {
        let ratio = t_eval / dt;
        if !(dt > T::zero()) || (ratio - ratio.round()).abs() > T::lit(1e-6) * ratio.max(T::one()) {
            return Err(Error::Invalid(format!("t_eval = {t_eval} is not a multiple of dt = {dt}")));
        }
    }

    let reference = MonolithicOracle::new(*params, disc.modes, reference_dt)?.state_at(t_eval)?;
    let mut rows: Vec<ConvergenceRow<T>> = Vec::with_capacity(dts.len());
    for &dt in dts {
        let (eta, u, p) = match scheme {
            SchemeKind::Monolithic => {
                let panels = (dt / T::lit(2.0 * ORACLE_MAX_STEP)).ceil().max(T::one());
                let fine_dt = dt / (panels + panels);
                let s = MonolithicOracle::new(*params, disc.modes, fine_dt)?.state_at(t_eval)?;
                (s.eta, s.u, s.p)
            }
            _ => {
                let d = Discretization { dt, ..*disc };
                let out = simulate(scheme, params, &d, t_eval)?;
                match out.final_state {
                    Some(s) => (s.eta, s.u_gamma, s.p_gamma),
                    None => {
                        rows.push(ConvergenceRow {
                            dt,
                            errors: None,
                            orders: None,
                        });
                        continue;
                    }
                }
            }
        };
        let errors = FieldErrors {
            eta: relative_error(&eta, &reference.eta),
            u: relative_error(&u, &reference.u),
            p: relative_error(&p, &reference.p),
        };
        let orders = rows.last().and_then(|prev| {
            prev.errors.map(|e| FieldErrors {
                eta: observed_order(e.eta, errors.eta, prev.dt, dt),
                u: observed_order(e.u, errors.u, prev.dt, dt),
                p: observed_order(e.p, errors.p, prev.dt, dt),
            })
        });
        rows.push(ConvergenceRow {
            dt,
            errors: Some(errors),
            orders,
        });
    }
    Ok(ConvergenceTable {
        scheme,
        t_eval,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc() -> Discretization<f64> {
        Discretization {
            modes: 8,
            ..Default::default()
        }
    }

    #[test]
    fn oracle_against_itself() {
        let t = convergence_study(
            &ProblemParams::benchmark(1.1),
            &disc(),
            &[1e-4, 5e-5],
            0.01,
            SchemeKind::Monolithic,
            1e-6,
        )
        .unwrap();
        for row in &t.rows {
            let e = row.errors.unwrap();
            assert!(e.eta < 1e-10 && e.u < 1e-10 && e.p < 1e-10, "{e:?}");
        }
    }

    #[test]
    fn light_wall_dn_is_not_available() {
        let t = convergence_study(
            &ProblemParams::benchmark(1.1),
            &disc(),
            &[5e-5, 1e-5],
            0.01,
            SchemeKind::DirichletNeumann,
            1e-6,
        )
        .unwrap();
        assert!(t.rows.iter().all(|r| r.errors.is_none() && r.orders.is_none()));
    }

    #[test]
    fn rejects_bad_step_lists() {
        let p = ProblemParams::benchmark(1.1);
        assert!(convergence_study(&p, &disc(), &[1e-4, 1e-4], 0.01, SchemeKind::Beta, 1e-6).is_err());
        assert!(convergence_study(&p, &disc(), &[3e-3], 0.01, SchemeKind::Beta, 1e-6).is_err());
    }

    #[test]
    fn order_formula() {
        assert!((observed_order::<f64>(4e-2, 1e-2, 2e-4, 1e-4) - 2.0).abs() < 1e-12);
        assert!((observed_order::<f64>(1e-2, 2e-3, 5e-5, 1e-5) - 1.0).abs() < 1e-12);
    }
}
