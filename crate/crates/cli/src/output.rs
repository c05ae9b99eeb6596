use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::config::{Command, Format, RunConfig};
use crate::error::CliError;

pub const CONFIG_PREFIX: &str = "# config: ";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

/// 17 significant digits, so every double survives a text round trip.
/// Negative zero prints as zero.
pub fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) => json!(x),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// A command's result: a flat table for CSV and a JSON payload.
/// `payload = None` means the JSON body is the table itself.
pub struct Report {
    pub table: Table,
    pub payload: Option<Value>,
}

impl Report {
    pub fn table(table: Table) -> Self {
        Self { table, payload: None }
    }
}

pub fn render(cmd: Command, cfg: &RunConfig, report: &Report) -> String {
    match cfg.format {
        Format::Csv => {
            let mut s = format!("# bhqnm {}\n{CONFIG_PREFIX}{}\n", cmd.name(), cfg.to_json());
            s.push_str(&report.table.columns.join(","));
            s.push('\n');
            for row in &report.table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let data = report.payload.clone().unwrap_or_else(|| {
                json!({
                    "columns": report.table.columns,
                    "rows": report.table.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            });
            let v = json!({ "command": cmd.name(), "config": cfg, "data": data });
            let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Recovers the embedded config from a CSV or JSON output.
pub fn embedded_config(text: &str) -> Result<RunConfig, CliError> {
    if let Some(line) = text.lines().find_map(|l| l.strip_prefix(CONFIG_PREFIX)) {
        return RunConfig::from_json(line);
    }
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("output: {e}")))?;
    serde_json::from_value(v["config"].clone()).map_err(|e| CliError::Config(format!("output config: {e}")))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
