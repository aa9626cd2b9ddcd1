//! Static gnuplot data and scripts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::csv::format_number;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::schemes::TimeSeries;
use crate::stability::SweepRow;

pub enum PlotSource<'a, T> {
    Series(&'a TimeSeries<T>),
    Sweep { parameter: &'a str, rows: &'a [SweepRow<T>] },
}

/// Paths written by [`emit_plotdata`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotFiles {
    pub data: PathBuf,
    pub script: PathBuf,
}

const SERIES_COLUMNS: [&str; 6] = ["t", "p_in", "eta_mid", "eta_maxmode", "p_mid", "u_mid"];

fn series_table<T: Real>(series: &TimeSeries<T>) -> String {
    let mut s = String::new();
    if let Some(step) = series.diverged_at {
        let _ = writeln!(s, "# diverged at step {step}");
    }
    let _ = writeln!(s, "# {}", SERIES_COLUMNS.join(" "));
    for r in &series.records {
        let cells = [r.t, r.p_in, r.eta_mid, r.eta_maxmode, r.p_mid, r.u_mid].map(format_number);
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

fn sweep_table<T: Real>(parameter: &str, rows: &[SweepRow<T>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {parameter} worst_radius verdict");
    for r in rows {
        let _ = writeln!(
            s,
            "{} {} {}",
            format_number(r.value),
            format_number(r.report.worst_radius()),
            r.report.verdict()
        );
    }
    s
}

fn script(data_name: &str, png_name: &str, x_label: &str, columns: &[(usize, &str)], log_y: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 900,{}", 260 * columns.len());
    let _ = writeln!(s, "set output '{png_name}'");
    let _ = writeln!(s, "set multiplot layout {},1", columns.len());
    let _ = writeln!(s, "set grid");
    if log_y {
        let _ = writeln!(s, "set logscale y");
    }
    let _ = writeln!(s, "set xlabel '{x_label}'");
    for (col, label) in columns {
        let _ = writeln!(s, "set ylabel '{label}'");
        let _ = writeln!(s, "plot '{data_name}' using 1:{col} with lines title '{label}'");
    }
    let _ = writeln!(s, "unset multiplot");
    s
}

/// Writes `<stem>.dat` (whitespace-separated table) and `<stem>.gp`, a
/// gnuplot script rendering `<stem>.png`.
pub fn emit_plotdata<T: Real>(source: &PlotSource<'_, T>, stem: &Path) -> Result<PlotFiles> {
    let data = stem.with_extension("dat");
    let script_path = stem.with_extension("gp");
    let file_name = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let png = file_name(&stem.with_extension("png"));
    let (table, gp) = match source {
        PlotSource::Series(series) => {
            if series.records.is_empty() {
                return Err(Error::Invalid("cannot plot an empty time series".into()));
            }
            let columns: Vec<(usize, &str)> = SERIES_COLUMNS[1..].iter().enumerate().map(|(i, c)| (i + 2, *c)).collect();
            (series_table(series), script(&file_name(&data), &png, "t (s)", &columns, false))
        }
        PlotSource::Sweep { parameter, rows } => {
            if rows.is_empty() {
                return Err(Error::Invalid("cannot plot an empty sweep".into()));
            }
            (
                sweep_table(parameter, rows),
                script(&file_name(&data), &png, parameter, &[(2, "worst_radius")], true),
            )
        }
    };
    std::fs::write(&data, table).map_err(|e| Error::io(&data, e))?;
    std::fs::write(&script_path, gp).map_err(|e| Error::io(&script_path, e))?;
    Ok(PlotFiles {
        data,
        script: script_path,
    })
}
