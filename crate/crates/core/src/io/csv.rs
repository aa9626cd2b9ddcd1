//! CSV documents with a `#` comment preamble.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::RunConfig;
use crate::scalar::Real;

/// Numeric cell with 13 significant digits; non-finite values print as
/// `nan`, `inf` or `-inf`.
pub fn format_number<T: Real>(v: T) -> String {
    let v = v.to_f64_lossy();
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.12e}")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CsvDocument {
    /// Preamble lines, stored without the leading `# `.
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvDocument {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) -> &mut Self {
        self.comments.push(line.into());
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::DimensionMismatch {
                expected: self.header.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Appends the full parameter set of `config` (without the output
    /// location) and a seedless note.
    pub fn echo_config<T: Real>(&mut self, config: &RunConfig<T>) -> &mut Self {
        let echoed = RunConfig {
            output: None,
            ..config.clone()
        };
        for line in super::render_config(&echoed).lines().filter(|l| !l.is_empty()) {
            self.comments.push(line.to_string());
        }
        self.comments
            .push("deterministic: no random seed is involved; identical inputs give identical output".into());
        self
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Values of a numeric column; cells that do not parse become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx].parse().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let write_err = |e: csv::Error| Error::Invalid(format!("CSV encoding failed: {e}"));
        w.write_record(&self.header).map_err(write_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(write_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invalid(format!("CSV encoding failed: {e}")))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))?);
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let comments = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim_start().to_string())
            .collect();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let read_err = |e: csv::Error| Error::Invalid(format!("malformed CSV: {e}"));
        let header = reader.headers().map_err(read_err)?.iter().map(str::to_string).collect();
        let rows = reader
            .records()
            .map(|r| r.map(|r| r.iter().map(str::to_string).collect()).map_err(read_err))
            .collect::<Result<_>>()?;
        Ok(Self { comments, header, rows })
    }
}

/// Writes the document in one piece so that a failure never leaves a
/// truncated file behind.
pub fn emit_csv(doc: &CsvDocument, path: &Path) -> Result<()> {
    let text = doc.to_csv_string()?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<CsvDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    CsvDocument::parse(&text)
}
