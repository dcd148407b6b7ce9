//! Deterministic CSV / JSON / SVG writers.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Shortest decimal that parses back to the same `f64`, in exponent form.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// A CSV cell.
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_f64(*v),
        }
    }
}

pub fn csv_bytes(header: &[&str], rows: &[Vec<Cell>]) -> CliResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Validation(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::render)).map_err(fail)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Validation(format!("csv encoding failed: {e}")))
}

/// Pretty JSON with alphabetically ordered keys and a trailing newline.
pub fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    // Value's map is a BTreeMap, which sorts keys.
    let value = serde_json::to_value(value)
        .map_err(|e| CliError::Validation(format!("json encoding failed: {e}")))?;
    let mut out = serde_json::to_vec_pretty(&value)
        .map_err(|e| CliError::Validation(format!("json encoding failed: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

pub fn is_stdout(path: &Path) -> bool {
    path.as_os_str() == "-"
}

pub fn write_output(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if is_stdout(path) {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io("<stdout>", e));
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// `dir/stem_<suffix>.ext` next to `path`.
pub fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}
