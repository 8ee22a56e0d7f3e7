//! Deterministic file output: CSV with full round-trip precision (17
//! significant digits, LF endings) and JSON with lexicographic key order.

use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

pub struct CsvWriter {
    path: PathBuf,
    buf: String,
}

impl CsvWriter {
    pub fn new(dir: &Path, name: &str, header: &str) -> Self {
        Self {
            path: dir.join(name),
            buf: format!("{header}\n"),
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&v| fmt(v)).collect();
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn row_mixed(&mut self, head: &str, values: &[f64]) {
        self.buf.push_str(head);
        for &v in values {
            self.buf.push(',');
            self.buf.push_str(&fmt(v));
        }
        self.buf.push('\n');
    }

    pub fn finish(self) -> Result<(), CliError> {
        write_bytes(&self.path, self.buf.as_bytes())
    }
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|e| CliError::Numeric(format!("cannot write {}: {e}", path.display())))
}

/// serde_json maps are BTree-backed, so serialization is key-sorted already.
pub fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Numeric(format!("json: {e}")))?;
    text.push('\n');
    write_bytes(&dir.join(name), text.as_bytes())
}

/// Companion plot script: generic column-plot commands for a CSV.
pub fn write_plot_script(
    dir: &Path,
    name: &str,
    csv: &str,
    columns: &[(usize, &str)],
    title: &str,
) -> Result<(), CliError> {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set title '{title}'\n"));
    let parts: Vec<String> = columns
        .iter()
        .map(|(col, label)| format!("'{csv}' using 1:{col} with lines title '{label}'"))
        .collect();
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    write_bytes(&dir.join(name), s.as_bytes())
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))
}
