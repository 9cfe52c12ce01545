//! CSV schema validator shared by the integration tests.
#![allow(dead_code)]

use std::path::Path;

use sha2::{Digest, Sha256};

use bosezeno_cli::{columns, Mode};

#[derive(Debug)]
pub struct ParsedCsv {
    pub mode: Mode,
    pub config: Vec<String>,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedCsv {
    pub fn column(&self, name: &str) -> Vec<f64> {
        let k = self
            .columns
            .iter()
            .position(|c| c == name)
            .expect("known column");
        self.rows
            .iter()
            .map(|r| r[k].parse().expect("numeric cell"))
            .collect()
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Int,
    Float,
    OptFloat,
    Bool,
    Method,
}

fn kind(column: &str) -> Kind {
    match column {
        "n" | "N" => Kind::Int,
        "bound_vacuous" => Kind::Bool,
        "method" => Kind::Method,
        "exact_p_final" => Kind::OptFloat,
        _ => Kind::Float,
    }
}

fn check_cell(kind: Kind, cell: &str) -> Result<(), String> {
    let float = |s: &str| -> Result<(), String> {
        // 17 significant digits in scientific notation
        let (mantissa, _) = s
            .split_once('e')
            .ok_or_else(|| format!("`{s}` is not in exponent form"))?;
        let digits = mantissa.trim_start_matches('-').replace('.', "");
        if digits.len() != 17 {
            return Err(format!("`{s}` does not carry 17 significant digits"));
        }
        s.parse::<f64>()
            .map_err(|e| format!("`{s}`: {e}"))
            .map(|_| ())
    };
    match kind {
        Kind::Int => cell
            .parse::<u64>()
            .map(|_| ())
            .map_err(|e| format!("`{cell}`: {e}")),
        Kind::Float => float(cell),
        Kind::OptFloat if cell.is_empty() => Ok(()),
        Kind::OptFloat => float(cell),
        Kind::Bool => match cell {
            "true" | "false" => Ok(()),
            _ => Err(format!("`{cell}` is not a boolean")),
        },
        Kind::Method => match cell {
            "bisection" | "grid_scan" | "at_lower_bound" => Ok(()),
            _ => Err(format!("`{cell}` is not a search method")),
        },
    }
}

/// Validates the metadata header, the per-mode column order and every cell.
pub fn validate_text(text: &str) -> Result<ParsedCsv, String> {
    let mut lines = text.lines();
    let mut next = |what: &str| lines.next().ok_or_else(|| format!("missing {what}"));
    let version = next("version line")?;
    if version != format!("# bosezeno {}", env!("CARGO_PKG_VERSION")) {
        return Err(format!("bad version line `{version}`"));
    }
    let mode: Mode = next("mode line")?
        .strip_prefix("# mode: ")
        .ok_or("bad mode line")?
        .parse()?;
    let hash = next("hash line")?
        .strip_prefix("# config_sha256: ")
        .ok_or("bad hash line")?
        .to_string();
    if hash.len() != 64 || !hash.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(format!("bad hash `{hash}`"));
    }
    if !next("convention line")?.starts_with("# convention: ") {
        return Err("bad convention line".into());
    }
    let rest: Vec<&str> = text.lines().skip(4).collect();
    let mut config = Vec::new();
    let mut params = Vec::new();
    let mut i = 0;
    while let Some(line) = rest.get(i).and_then(|l| l.strip_prefix("# config: ")) {
        config.push(line.to_string());
        i += 1;
    }
    while let Some(line) = rest.get(i).and_then(|l| l.strip_prefix("# param: ")) {
        let (k, v) = line.split_once(" = ").ok_or("bad param line")?;
        params.push((k.to_string(), v.to_string()));
        i += 1;
    }
    if config.is_empty() || config[0] != format!("run.mode = {mode}") {
        return Err("config echo must open with run.mode".into());
    }
    let digest = Sha256::digest(config.join("\n").as_bytes());
    let expected: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hash != expected {
        return Err("config hash does not match the echoed config".into());
    }
    let header = rest.get(i).ok_or("missing column row")?;
    let expected_columns = columns(mode);
    if *header != expected_columns.join(",") {
        return Err(format!(
            "columns `{header}` differ from {expected_columns:?}"
        ));
    }
    let kinds: Vec<Kind> = expected_columns.iter().map(|c| kind(c)).collect();
    let mut rows = Vec::new();
    for (r, line) in rest[i + 1..].iter().enumerate() {
        let cells: Vec<String> = line.split(',').map(str::to_string).collect();
        if cells.len() != kinds.len() {
            return Err(format!(
                "row {r} has {} cells, expected {}",
                cells.len(),
                kinds.len()
            ));
        }
        for (cell, k) in cells.iter().zip(&kinds) {
            check_cell(*k, cell).map_err(|e| format!("row {r}: {e}"))?;
        }
        rows.push(cells);
    }
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    Ok(ParsedCsv {
        mode,
        config,
        params,
        columns: expected_columns.iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

pub fn validate(path: &Path) -> ParsedCsv {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    validate_text(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every file in `dir` with extension `ext`, sorted by name.
pub fn files_with_extension(dir: &Path, ext: &str) -> Vec<std::path::PathBuf> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .expect("output directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}
