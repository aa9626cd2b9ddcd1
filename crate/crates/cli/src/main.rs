use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fsi_core::io::{emit_csv, emit_plotdata, format_number, parse_config, CsvDocument, PlotSource};
use fsi_core::model::{Discretization, ModalVector, ProblemParams};
use fsi_core::pressure::{validate_pressure, DEFAULT_FD_TOLERANCE};
use fsi_core::schemes::{simulate, SchemeKind};
use fsi_core::spectral::{dn_instability_criterion, OperatorSpectrum};
use fsi_core::stability::{
    convergence_study, explicit_critical_dt, geomspace, linspace, sweep, theta_region,
    threads_from_env, ModeCoefficients, SweepParameter,
};
use fsi_core::RunConfigF64;

/// Stability laboratory for partitioned fluid-structure interaction schemes.
#[derive(Debug, Parser)]
#[command(name = "fsi-lab", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Run configuration; the built-in benchmark when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Scheme: beta, dn or monolithic.
    #[arg(long, global = true)]
    scheme: Option<SchemeKind>,
    /// Time step, s.
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Final time, s.
    #[arg(long, global = true)]
    t_end: Option<f64>,
    /// Explicit pressure fraction of the beta-scheme, 0 to 1
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Structure scheme weight, 0 to 1/2
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Number of sine modes J.
    #[arg(long, global = true)]
    modes: Option<usize>,
    /// Wall density, g/cm^3.
    #[arg(long, global = true)]
    rho_s: Option<f64>,
    /// CSV output file; standard output when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also write `<STEM>.dat` and `<STEM>.gp` (simulate, sweep).
    #[arg(long, global = true, value_name = "STEM")]
    plot: Option<PathBuf>,
    /// Exit with status 2 when a run diverges or a verdict is unstable.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Added-mass, Robin-trace and stiffness spectra.
    Eigs,
    /// Pulse-driven run from rest.
    Simulate,
    /// Worst spectral radius over a parameter range.
    Sweep {
        /// One of rho_s, beta, theta, dt, R, L.
        #[arg(long)]
        vary: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
    },
    /// Stability map of one mode over (theta, dt).
    ThetaRegion {
        #[arg(long, default_value_t = 1)]
        mode: usize,
        #[arg(long, default_value_t = 0.0)]
        theta_from: f64,
        #[arg(long, default_value_t = 0.5)]
        theta_to: f64,
        #[arg(long, default_value_t = 11)]
        theta_points: usize,
        #[arg(long, default_value_t = 1e-6)]
        dt_from: f64,
        #[arg(long, default_value_t = 1e-2)]
        dt_to: f64,
        #[arg(long, default_value_t = 41)]
        dt_points: usize,
        /// Linear instead of logarithmic dt spacing.
        #[arg(long)]
        linear_dt: bool,
    },
    /// Temporal convergence against the exact coupled solution.
    Converge {
        /// Decreasing list of time steps.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-4, 5e-5, 1e-5, 5e-6])]
        dts: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        t_eval: f64,
        /// Quadrature step of the reference solution.
        #[arg(long, default_value_t = fsi_core::stability::REFERENCE_FINE_DT)]
        reference_dt: f64,
    },
    /// Finite-difference pressure solver against the modal solution.
    ValidatePressure {
        /// Increasing list of grid sizes (Nz = Nr).
        #[arg(long, value_delimiter = ',', default_values_t = [33, 65, 129])]
        grids: Vec<usize>,
        /// Sine mode used as wall datum.
        #[arg(long, default_value_t = 1)]
        mode: usize,
    },
}

/// Result of one subcommand, before anything is written.
struct Report {
    doc: CsvDocument,
    failed: bool,
    plot: Option<PlotData>,
}

enum PlotData {
    Series(fsi_core::TimeSeriesF64),
    Sweep(String, Vec<fsi_core::stability::SweepRow<f64>>),
}

fn load_config(common: &Common) -> Result<RunConfigF64> {
    let mut config = match &common.config {
        Some(path) => parse_config(path)?,
        None => RunConfigF64 {
            params: ProblemParams::benchmark(1.1),
            disc: Discretization::default(),
            scheme: SchemeKind::Beta,
            t_end: None,
            output: None,
        },
    };
    if let Some(s) = common.scheme {
        config.scheme = s;
    }
    if let Some(v) = common.dt {
        config.disc.dt = v;
    }
    if let Some(v) = common.t_end {
        config.t_end = Some(v);
    }
    if let Some(v) = common.beta {
        config.disc.beta = v;
    }
    if let Some(v) = common.theta {
        config.disc.theta = v;
    }
    if let Some(v) = common.modes {
        config.disc.modes = v;
    }
    if let Some(v) = common.rho_s {
        config.params.wall.rho_s = v;
    }
    if let Some(o) = &common.out {
        config.output = Some(o.clone());
    }
    config.validate()?;
    Ok(config)
}

fn n_a(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), format_number)
}

fn eigs(config: &RunConfigF64) -> Result<Report> {
    let p = &config.params;
    let s = OperatorSpectrum::new(p, config.disc.modes);
    let crit = dn_instability_criterion(&p.geometry, &p.fluid, &p.wall);
    let mut doc = CsvDocument::new(&["j", "mu_j", "lambda_j", "ell_j"]);
    doc.comment(format!("mu_max = {}", format_number(crit.mu_max)))
        .comment(format!("critical_rho_s = {}", format_number(crit.critical_rho_s)))
        .comment(format!("dn_ratio = {}", format_number(crit.ratio)))
        .comment(format!("dn_verdict = {}", crit.verdict.as_str()));
    for j in 0..s.modes() {
        doc.push_row(vec![
            (j + 1).to_string(),
            format_number(s.mu[j]),
            format_number(s.lambda[j]),
            format_number(s.ell[j]),
        ])?;
    }
    Ok(Report {
        doc,
        failed: false,
        plot: None,
    })
}

fn run_simulation(config: &RunConfigF64) -> Result<Report> {
    let out = simulate(config.scheme, &config.params, &config.disc, config.t_end())?;
    let mut doc = CsvDocument::new(&["t", "p_in", "eta_mid", "eta_maxmode", "p_mid", "u_mid"]);
    doc.comment(format!("scheme = {}", config.scheme.as_str()));
    if let Some(step) = out.series.diverged_at {
        doc.comment(format!("diverged at step {step}"));
    }
    for r in &out.series.records {
        doc.push_row([r.t, r.p_in, r.eta_mid, r.eta_maxmode, r.p_mid, r.u_mid].map(format_number).to_vec())?;
    }
    Ok(Report {
        doc,
        failed: out.series.is_diverged(),
        plot: Some(PlotData::Series(out.series)),
    })
}

fn run_sweep(config: &RunConfigF64, vary: &str, from: f64, to: f64, points: usize, log: bool) -> Result<Report> {
    let parameter: SweepParameter = vary.parse()?;
    if log && !(from > 0.0 && to > 0.0) {
        bail!("logarithmic sweeps need positive end points");
    }
    let values = if log { geomspace(from, to, points) } else { linspace(from, to, points) };
    let rows = sweep(&config.params, &config.disc, parameter, &values, config.scheme, threads_from_env()?)?;
    let mut doc = CsvDocument::new(&[parameter.as_str(), "worst_radius", "worst_mode", "dn_ratio", "verdict"]);
    doc.comment(format!("scheme = {}", config.scheme.as_str()));
    for r in &rows {
        doc.push_row(vec![
            format_number(r.value),
            format_number(r.report.worst_radius()),
            r.report.worst_mode.to_string(),
            format_number(r.report.dn_ratio),
            r.report.verdict().to_string(),
        ])?;
    }
    Ok(Report {
        doc,
        failed: rows.iter().any(|r| !r.report.stable),
        plot: Some(PlotData::Sweep(parameter.as_str().to_string(), rows)),
    })
}

fn run_theta_region(
    config: &RunConfigF64,
    mode: usize,
    theta_range: (f64, f64, usize),
    dt_range: (f64, f64, usize),
    linear_dt: bool,
) -> Result<Report> {
    let thetas = linspace(theta_range.0, theta_range.1, theta_range.2);
    let dts = if linear_dt {
        linspace(dt_range.0, dt_range.1, dt_range.2)
    } else {
        if !(dt_range.0 > 0.0 && dt_range.1 > 0.0) {
            bail!("logarithmic dt grids need positive end points");
        }
        geomspace(dt_range.0, dt_range.1, dt_range.2)
    };
    let region = theta_region(&config.params, mode, &thetas, &dts, config.disc.beta)?;
    let dt_star = explicit_critical_dt(&ModeCoefficients::from_params(&config.params, mode));
    let mut doc = CsvDocument::new(&["theta", "dt", "radius", "stable"]);
    doc.comment(format!("mode = {mode}"))
        .comment(format!("explicit_critical_dt = {}", format_number(dt_star)));
    let mut failed = false;
    for (i, &theta) in thetas.iter().enumerate() {
        for (k, &dt) in dts.iter().enumerate() {
            let stable = region.is_stable(i, k);
            failed |= !stable;
            doc.push_row(vec![
                format_number(theta),
                format_number(dt),
                format_number(region.radius(i, k)),
                u8::from(stable).to_string(),
            ])?;
        }
    }
    Ok(Report {
        doc,
        failed,
        plot: None,
    })
}

fn run_convergence(config: &RunConfigF64, dts: &[f64], t_eval: f64, reference_dt: f64) -> Result<Report> {
    let table = convergence_study(&config.params, &config.disc, dts, t_eval, config.scheme, reference_dt)?;
    let mut doc = CsvDocument::new(&["dt", "err_eta", "err_u", "err_p", "order_eta", "order_u", "order_p"]);
    doc.comment(format!("scheme = {}", config.scheme.as_str()))
        .comment(format!("t_eval = {}", format_number(t_eval)))
        .comment(format!("reference_dt = {}", format_number(reference_dt)));
    for r in &table.rows {
        doc.push_row(vec![
            format_number(r.dt),
            n_a(r.errors.map(|e| e.eta)),
            n_a(r.errors.map(|e| e.u)),
            n_a(r.errors.map(|e| e.p)),
            n_a(r.orders.map(|e| e.eta)),
            n_a(r.orders.map(|e| e.u)),
            n_a(r.orders.map(|e| e.p)),
        ])?;
    }
    Ok(Report {
        doc,
        failed: table.rows.iter().any(|r| r.errors.is_none()),
        plot: None,
    })
}

fn run_pressure_validation(config: &RunConfigF64, grids: &[usize], mode: usize) -> Result<Report> {
    if mode == 0 {
        bail!("--mode must be at least 1");
    }
    let w = ModalVector::unit(mode, mode);
    let rows = validate_pressure(&config.params, &w, grids, DEFAULT_FD_TOLERANCE)?;
    let mut doc = CsvDocument::new(&["grid_size", "trace_error_L2", "observed_order"]);
    doc.comment(format!("mode = {mode}"));
    for r in &rows {
        doc.push_row(vec![r.grid_size.to_string(), format_number(r.trace_error_l2), n_a(r.observed_order)])?;
    }
    Ok(Report {
        doc,
        failed: false,
        plot: None,
    })
}

fn execute(cli: &Cli) -> Result<Report> {
    let config = load_config(&cli.common)?;
    let (name, mut report) = match &cli.command {
        Command::Eigs => ("eigs", eigs(&config)?),
        Command::Simulate => ("simulate", run_simulation(&config)?),
        Command::Sweep {
            vary,
            from,
            to,
            points,
            log,
        } => ("sweep", run_sweep(&config, vary, *from, *to, *points, *log)?),
        Command::ThetaRegion {
            mode,
            theta_from,
            theta_to,
            theta_points,
            dt_from,
            dt_to,
            dt_points,
            linear_dt,
        } => (
            "theta-region",
            run_theta_region(
                &config,
                *mode,
                (*theta_from, *theta_to, *theta_points),
                (*dt_from, *dt_to, *dt_points),
                *linear_dt,
            )?,
        ),
        Command::Converge {
            dts,
            t_eval,
            reference_dt,
        } => ("converge", run_convergence(&config, dts, *t_eval, *reference_dt)?),
        Command::ValidatePressure { grids, mode } => ("validate-pressure", run_pressure_validation(&config, grids, *mode)?),
    };
    let mut preamble = CsvDocument::default();
    preamble.comment(format!("fsi-lab {} {name}", env!("CARGO_PKG_VERSION")));
    preamble.echo_config(&config);
    report.doc.comments.splice(0..0, preamble.comments);

    match &config.output {
        Some(path) => emit_csv(&report.doc, path)?,
        None => {
            let text = report.doc.to_csv_string()?;
            std::io::stdout().lock().write_all(text.as_bytes()).context("writing to standard output")?;
        }
    }
    if let (Some(stem), Some(plot)) = (&cli.common.plot, &report.plot) {
        let source = match plot {
            PlotData::Series(s) => PlotSource::Series(s),
            PlotData::Sweep(name, rows) => PlotSource::Sweep { parameter: name, rows },
        };
        emit_plotdata(&source, stem)?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(report) if report.failed && cli.common.strict => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
