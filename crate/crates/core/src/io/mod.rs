//! Configuration files, CSV output and gnuplot data.

mod config;
mod csv;
mod plot;

pub use self::config::{parse_config, parse_config_str, render_config, RunConfig};
pub use self::csv::{emit_csv, format_number, read_csv, CsvDocument};
pub use self::plot::{emit_plotdata, PlotFiles, PlotSource};
