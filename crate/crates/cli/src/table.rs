//! CSV result tables with a `# `-prefixed metadata header.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::config::{format_float, Mode, RunConfig};
use crate::error::CliError;

pub const CONVENTION: &str =
    "Jz = (n_excited - n_ground)/2 in the instantaneous eigenframe; ground state <Jz> = -N/2; p_a = per-boson probability of lab level a";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(&'static str),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => (*s).to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(u64::from(x))
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    mode: Mode,
    columns: &'static [&'static str],
    params: Vec<(String, String)>,
    rows: Vec<Vec<Cell>>,
}

/// Hex SHA-256 of the canonical configuration echo.
pub fn config_hash(config: &RunConfig) -> String {
    let digest = Sha256::digest(config.echo().join("\n").as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl ResultTable {
    pub fn new(mode: Mode, columns: &'static [&'static str]) -> Self {
        Self {
            mode,
            columns,
            params: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Adds a per-file parameter line to the header.
    pub fn param(mut self, key: &str, value: impl Into<String>) -> Self {
        self.params.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the schema"
        );
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn render(&self, config: &RunConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# bosezeno {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# mode: {}", self.mode);
        let _ = writeln!(out, "# config_sha256: {}", config_hash(config));
        let _ = writeln!(out, "# convention: {CONVENTION}");
        for line in config.echo() {
            let _ = writeln!(out, "# config: {line}");
        }
        for (k, v) in &self.params {
            let _ = writeln!(out, "# param: {k} = {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path, config: &RunConfig) -> Result<(), CliError> {
        std::fs::write(path, self.render(config)).map_err(|e| CliError::io(path, e))
    }
}
