use fsi_core::model::{Discretization, ModalVector, ProblemParams};
use fsi_core::schemes::{beta_step, dn_step, simulate, SchemeContext, SchemeKind, SchemeState};
use fsi_core::spectral::dn_instability_criterion;
use fsi_core::stability::{
    beta_amplification, dn_amplification, explicit_critical_dt, linspace, ModeCoefficients, stability_report, sweep, SweepParameter, STABILITY_TOLERANCE,
};
use proptest::prelude::*;

fn params(rho_s: f64, radius: f64, length: f64, h: f64) -> ProblemParams<f64> {
    let mut p = ProblemParams::benchmark(rho_s);
    p.geometry.radius = radius;
    p.geometry.length = length;
    p.wall.h = h;
    p
}

fn ctx(p: ProblemParams<f64>, modes: usize, dt: f64, beta: f64, theta: f64) -> SchemeContext<f64> {
    let d = Discretization {
        modes,
        dt,
        beta,
        theta,
        ..Default::default()
    };
    SchemeContext::new(p, &d).unwrap()
}

/// Slope of `ln |x_n|` over the second half of a homogeneous run.
fn log_slope(amplitudes: &[f64]) -> f64 {
    let n = amplitudes.len();
    let (a, b) = (n / 2, n - 1);
    (amplitudes[b].ln() - amplitudes[a].ln()) / (b - a) as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dn_light_walls_are_unstable_at_every_step(
        radius in 0.1f64..2.0,
        length in 1.0f64..20.0,
        h in 0.01f64..0.5,
        fraction in 0.01f64..0.99,
    ) {
        let mut p = params(1.0, radius, length, h);
        let crit = dn_instability_criterion(&p.geometry, &p.fluid, &p.wall);
        p.wall.rho_s = fraction * crit.critical_rho_s;
        let ratio = dn_instability_criterion(&p.geometry, &p.fluid, &p.wall).ratio;
        prop_assert!(ratio < 1.0);
        for dt in [1e-3, 1e-4, 1e-5] {
            let r = dn_amplification(&p, 1, dt).unwrap().radius;
            prop_assert!(r > 1.0, "ratio {ratio} dt {dt} radius {r}");
        }
    }

    #[test]
    fn beta_scheme_is_unconditionally_stable(
        rho_s in 0.05f64..500.0,
        radius in 0.1f64..2.0,
        length in 1.0f64..20.0,
        beta in 0.0f64..=1.0,
        theta in 0.25f64..=0.5,
        log_dt in -7.0f64..0.0,
        j in 1usize..=64,
    ) {
        let p = params(rho_s, radius, length, 0.1);
        let dt = 10f64.powf(log_dt);
        let r = beta_amplification(&p, j, dt, beta, theta).unwrap().radius;
        prop_assert!(r <= 1.0 + STABILITY_TOLERANCE, "radius - 1 = {:e}", r - 1.0);
    }

    #[test]
    fn damped_energy_never_grows(
        eta0 in proptest::collection::vec(-1e-2f64..1e-2, 8),
        u0 in proptest::collection::vec(-1.0f64..1.0, 8),
        d0 in 0.0f64..50.0,
        d1 in 0.0f64..5.0,
        theta in 0.25f64..=0.5,
        log_dt in -5.0f64..-3.0,
    ) {
        let mut p = ProblemParams::benchmark(1.1);
        p.pulse.p_max = 0.0;
        p.wall.d0 = d0;
        p.wall.d1 = d1;
        let c = ctx(p, 8, 10f64.powf(log_dt), 1.0, theta);
        let s = &c.spectrum;
        let energy = |st: &SchemeState<f64>| -> f64 {
            (0..8)
                .map(|k| {
                    let (e1, e0) = (st.eta[k], st.eta_prev[k]);
                    let v = (e1 - e0) / c.dt;
                    let mean = 0.5 * (e1 + e0);
                    0.5 * s.surface_mass * v * v + 0.5 * s.ell[k] * (mean * mean + (theta - 0.25) * (e1 - e0) * (e1 - e0))
                })
                .sum()
        };
        let z = ModalVector::zeros(8);
        let mut st = SchemeState::initial(
            ModalVector::from_vec(eta0).unwrap(),
            ModalVector::from_vec(u0).unwrap(),
            z,
            &c,
        );
        let mut prev = energy(&st);
        for _ in 0..500 {
            st = beta_step(&st, &c);
            let e = energy(&st);
            prop_assert!(e <= prev * (1.0 + 1e-12) + 1e-300, "energy rose from {prev} to {e}");
            prev = e;
        }
    }

    #[test]
    fn pulse_driven_beta_runs_stay_bounded(
        rho_s in 0.1f64..300.0,
        beta in 0.0f64..=1.0,
        theta in 0.25f64..=0.5,
        dt in prop_oneof![Just(1e-3), Just(2e-4), Just(1e-4)],
    ) {
        let p = ProblemParams::benchmark(rho_s);
        let d = Discretization { modes: 16, dt, beta, theta, ..Default::default() };
        let out = simulate(SchemeKind::Beta, &p, &d, 0.12).unwrap();
        prop_assert!(!out.series.is_diverged());
        let window = out.series.peak_amplitude(0.0, p.pulse.t_max);
        let total = out.series.peak_amplitude(0.0, 0.12);
        prop_assert!(total <= 50.0 * window + 1e-300, "{total} vs {window}");
    }
}

#[test]
fn dn_growth_rate_matches_radius() {
    // ratio just below one: radius about 1.014 at dt = 1e-3
    let p = ProblemParams::benchmark(74.6);
    let dt = 1e-3;
    let radius = dn_amplification(&p, 1, dt).unwrap().radius;
    assert!(radius > 1.01, "{radius}");
    let mut q = p;
    q.pulse.p_max = 0.0;
    let c = ctx(q, 1, dt, 1.0, 0.5);
    let mut st = SchemeState::at_rest(1);
    st.eta[0] = 1e-6;
    st.eta_prev[0] = 1e-6;
    st.eta_prev2[0] = 1e-6;
    let mut amps = Vec::with_capacity(2000);
    for _ in 0..2000 {
        st = dn_step(&st, &c).unwrap();
        // envelope over the oscillation
        amps.push(st.eta[0].abs().max(st.eta_prev[0].abs()).max(st.eta_prev2[0].abs()));
    }
    let slope = log_slope(&amps);
    let want = radius.ln();
    assert!((slope - want).abs() <= 0.05 * want, "slope {slope} vs ln radius {want}");
}

#[test]
fn explicit_growth_rate_matches_radius() {
    let p = ProblemParams::benchmark(1.1);
    let modes = 1;
    let dt_star = explicit_critical_dt(&ModeCoefficients::from_params(&p, 1));
    let dt = 1.001 * dt_star;
    let radius = beta_amplification(&p, 1, dt, 0.0, 0.0).unwrap().radius;
    assert!(radius > 1.01, "{radius}");
    let mut q = p;
    q.pulse.p_max = 0.0;
    let c = ctx(q, modes, dt, 0.0, 0.0);
    let mut st = SchemeState::at_rest(modes);
    st.eta[0] = 1e-12;
    let mut amps = Vec::with_capacity(2000);
    for _ in 0..2000 {
        st = beta_step(&st, &c);
        amps.push(st.eta[0].abs().max(st.eta_prev[0].abs()));
    }
    let slope = log_slope(&amps);
    let want = radius.ln();
    assert!((slope - want).abs() <= 0.05 * want, "slope {slope} vs ln radius {want}");
}

#[test]
fn dn_sweep_flips_at_the_critical_density() {
    let p = ProblemParams::benchmark(1.1);
    let d = Discretization {
        modes: 64,
        ..Default::default()
    };
    let values = linspace(0.5, 150.0, 300);
    let rows = sweep(&p, &d, SweepParameter::RhoS, &values, SchemeKind::DirichletNeumann, None).unwrap();
    let first_stable = rows.iter().position(|r| r.report.stable).unwrap();
    assert!(rows[first_stable..].iter().all(|r| r.report.stable));
    assert!(rows[first_stable - 1].value < 74.6 && rows[first_stable].value > 74.6);
    for r in &rows {
        assert_eq!(r.report.stable, r.report.dn_ratio > 1.0, "rho_s = {}", r.value);
    }
}

#[test]
fn beta_sweep_is_stable_for_the_light_wall() {
    let p = ProblemParams::benchmark(0.55);
    let d = Discretization {
        modes: 64,
        ..Default::default()
    };
    let rows = sweep(&p, &d, SweepParameter::Beta, &linspace(0.0, 1.0, 21), SchemeKind::Beta, Some(2)).unwrap();
    assert!(rows.iter().all(|r| r.report.stable));
}

#[test]
fn theta_quarter_is_stable_for_all_listed_steps() {
    let p = ProblemParams::benchmark(1.1);
    for dt in [1e-3, 1e-4, 1e-5] {
        let d = Discretization {
            modes: 64,
            dt,
            theta: 0.25,
            ..Default::default()
        };
        assert!(stability_report(&p, &d, SchemeKind::Beta).unwrap().stable);
    }
}

#[test]
fn beta_zero_decouples_pressure() {
    let a = beta_amplification(&ProblemParams::benchmark(1.1), 3, 1e-4, 0.0, 0.5).unwrap();
    assert_eq!(a.matrix[2], [0.0, 0.0, 0.0]);
    assert_eq!(a.matrix[0][2], 0.0);
    assert!(a.eigenvalues.iter().any(|z| z.norm() == 0.0));
}
