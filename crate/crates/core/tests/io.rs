use std::path::Path;

use fsi_core::io::{
    emit_csv, emit_plotdata, parse_config, parse_config_str, read_csv, render_config, CsvDocument, PlotSource,
};
use fsi_core::model::ProblemParams;
use fsi_core::schemes::{simulate, SchemeKind, TimeRecord, TimeSeries};
use fsi_core::stability::{linspace, sweep, SweepParameter};
use fsi_core::{DiscretizationF64, Error, RunConfigF64};

const MINIMAL: &str = "[geometry]\nR = 0.5\nL = 6\n[fluid]\nrho_f = 1\n[wall]\nrho_s = 1.1\nh = 0.1\nC0 = 4e5\nC1 = 2.5e4\n\
                       [pulse]\np_max = 2e4\nt_max = 0.005\n";

fn parse(text: &str) -> fsi_core::Result<RunConfigF64> {
    parse_config_str(text, Path::new("test.cfg"))
}

#[test]
fn shipped_benchmark_config() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../benchmark.cfg");
    let c: RunConfigF64 = parse_config(&path).unwrap();
    assert_eq!(c.params, ProblemParams::benchmark(1.1));
    assert_eq!(c.disc, DiscretizationF64::default());
    assert_eq!(c.scheme, SchemeKind::Beta);
}

#[test]
fn defaults_fill_optional_keys() {
    let c = parse(MINIMAL).unwrap();
    assert_eq!(c.params.wall.d0, 0.0);
    assert_eq!(c.params.wall.d1, 0.0);
    assert_eq!(c.disc.beta, 1.0);
    assert_eq!(c.disc.theta, 0.5);
    assert_eq!(c.params, ProblemParams::benchmark(1.1));
}

#[test]
fn keys_are_case_insensitive() {
    let c = parse(&MINIMAL.replace("C0", "c0").replace("rho_s", "RHO_S").replace("[wall]", "[Wall]")).unwrap();
    assert_eq!(c.params.wall.c0, 4e5);
    let c = parse(&format!("{MINIMAL}[discretization]\nmodes = 16\n")).unwrap();
    assert_eq!(c.disc.modes, 16);
}

#[test]
fn empty_file_lists_required_keys() {
    match parse("") {
        Err(Error::MissingKeys(keys)) => {
            for k in ["R", "L", "rho_f", "rho_s", "h", "C0", "C1", "p_max", "t_max"] {
                assert!(keys.iter().any(|m| m.ends_with(&format!(" {k}"))), "{k} missing from {keys:?}");
            }
        }
        other => panic!("expected MissingKeys, got {other:?}"),
    }
}

#[test]
fn beta_out_of_range_is_rejected() {
    let err = parse(&format!("{MINIMAL}[discretization]\nbeta = 1.5\n")).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("0 ≤ β ≤ 1") && msg.contains("1.5"), "{msg}");
}

#[test]
fn unknown_key_reports_line() {
    let err = parse(&format!("{MINIMAL}[discretization]\ndt = 1e-4\nnu = 3\n")).unwrap_err();
    match err {
        Error::Config { line, message, .. } => {
            assert_eq!(line, MINIMAL.lines().count() + 3);
            assert!(message.contains("nu"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_line_reports_line() {
    let err = parse("[geometry]\nR = 0.5\nL 6\n").unwrap_err();
    assert!(matches!(err, Error::Config { line: 3, .. }), "{err:?}");
}

#[test]
fn missing_file_names_path() {
    let err = parse_config::<f64>(Path::new("/nonexistent/x.cfg")).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/x.cfg"));
}

#[test]
fn render_round_trips() {
    let mut c = parse(MINIMAL).unwrap();
    c.params.wall.d1 = 3.5;
    c.disc.theta = 0.3;
    c.t_end = Some(0.02);
    let back = parse(&render_config(&c)).unwrap();
    assert_eq!(back, c);
}

fn sample_doc() -> CsvDocument {
    let mut doc = CsvDocument::new(&["j", "mu_j"]);
    doc.comment("R = 0.5");
    for j in 1..=5 {
        doc.push_row(vec![j.to_string(), fsi_core::io::format_number(1.0 / j as f64 + 1e-13)]).unwrap();
    }
    doc
}

#[test]
fn csv_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let doc = sample_doc();
    emit_csv(&doc, &a).unwrap();
    emit_csv(&doc, &b).unwrap();
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    assert!(!bytes.contains(&b'\r'));
    let back = read_csv(&a).unwrap();
    assert_eq!(back, doc);
    for (j, v) in back.column("mu_j").unwrap().iter().enumerate() {
        let want = 1.0 / (j + 1) as f64 + 1e-13;
        assert!((v - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn header_only_document() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.csv");
    emit_csv(&CsvDocument::new(&["a", "b"]), &p).unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "a,b\n");
}

#[test]
fn ragged_rows_are_rejected() {
    let mut doc = CsvDocument::new(&["a", "b"]);
    assert!(doc.push_row(vec!["1".into()]).is_err());
}

#[test]
fn parameter_echo_is_present() {
    let c = parse(MINIMAL).unwrap();
    let mut doc = CsvDocument::new(&["x"]);
    doc.echo_config(&c);
    let text = doc.to_csv_string().unwrap();
    assert!(text.contains("# rho_s = 1.1\n"));
    assert!(text.contains("no random seed"));
}

#[test]
fn pulse_plot_has_the_pulse_shape() {
    let p = ProblemParams::benchmark(1.1);
    let disc = DiscretizationF64 {
        modes: 8,
        ..Default::default()
    };
    let out = simulate(SchemeKind::Beta, &p, &disc, 0.008).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plotdata(&PlotSource::Series(&out.series), &dir.path().join("pulse")).unwrap();
    let table = std::fs::read_to_string(&files.data).unwrap();
    let rows: Vec<Vec<f64>> = table
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
        .collect();
    let peak = rows.iter().max_by(|a, b| a[1].partial_cmp(&b[1]).unwrap()).unwrap();
    assert!((peak[0] - 0.0025).abs() < 1e-9 && (peak[1] - 2e4).abs() < 1e-6);
    assert!(rows.iter().filter(|r| r[0] > 0.005 + 1e-12).all(|r| r[1] == 0.0));
    let script = std::fs::read_to_string(&files.script).unwrap();
    assert!(script.contains("pulse.dat") && script.contains("using 1:2"));
}

#[test]
fn diverged_plot_is_annotated() {
    let p = ProblemParams::benchmark(1.1);
    let disc = DiscretizationF64 {
        modes: 8,
        ..Default::default()
    };
    let out = simulate(SchemeKind::DirichletNeumann, &p, &disc, 0.05).unwrap();
    let step = out.series.diverged_at.unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plotdata(&PlotSource::Series(&out.series), &dir.path().join("dn")).unwrap();
    let table = std::fs::read_to_string(files.data).unwrap();
    assert!(table.starts_with(&format!("# diverged at step {step}\n")));
    assert_eq!(table.lines().filter(|l| !l.starts_with('#')).count(), step);
}

#[test]
fn sweep_plot_table() {
    let p = ProblemParams::benchmark(1.1);
    let disc = DiscretizationF64 {
        modes: 4,
        ..Default::default()
    };
    let rows = sweep(&p, &disc, SweepParameter::RhoS, &linspace(1.0, 100.0, 5), SchemeKind::DirichletNeumann, Some(2))
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plotdata(&PlotSource::Sweep { parameter: "rho_s", rows: &rows }, &dir.path().join("s")).unwrap();
    let table = std::fs::read_to_string(files.data).unwrap();
    let body: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(body.len(), 5);
    assert!(body[0].ends_with("unstable") && body[4].ends_with(" stable"));
}

#[test]
fn empty_series_is_not_plotted() {
    let s: TimeSeries<f64> = TimeSeries {
        records: Vec::<TimeRecord<f64>>::new(),
        diverged_at: None,
    };
    let dir = tempfile::tempdir().unwrap();
    assert!(emit_plotdata(&PlotSource::Series(&s), &dir.path().join("e")).is_err());
}
