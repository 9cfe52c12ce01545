//! INI-style run configuration.
//!
//! ```text
//! [run]         mode
//! [schedule]    delta, epsilon0, T
//! [relaxation]  gamma_x, gamma_z          (grids)
//! [grid]        N, n (grids), samples
//! [readout]     target_pe
//! [tolerances]  rtol, atol
//! [tmin]        t_lo, t_hi, rel_precision, exact_cross_check_max
//! [output]      dir
//! ```
//!
//! Grids are comma lists whose items are numbers or `log:a:b:k`, meaning `k`
//! points spaced evenly in `log10` from `10^a` to `10^b`. Lines starting with
//! `#` or `;` are comments, as is anything after ` #` on a value line.
//! Parsing never stops at the first problem: every violation is collected with
//! its line number and key path.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bosezeno_core::frame::SweepSchedule;
use bosezeno_core::meanfield::RelaxationConfig;
use bosezeno_core::ode::{DormandPrince, Tolerance};
use bosezeno_core::readout::DEFAULT_TARGET_PE;
use bosezeno_core::tmin::TminSearch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Discrete,
    Meanfield,
    Exact,
    Readout,
    Tmin,
    Sweep,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::Discrete,
        Mode::Meanfield,
        Mode::Exact,
        Mode::Readout,
        Mode::Tmin,
        Mode::Sweep,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Discrete => "discrete",
            Mode::Meanfield => "meanfield",
            Mode::Exact => "exact",
            Mode::Readout => "readout",
            Mode::Tmin => "tmin",
            Mode::Sweep => "sweep",
        }
    }

    fn default_bosons(&self) -> Vec<u32> {
        match self {
            Mode::Discrete => vec![1, 10, 100],
            Mode::Meanfield => vec![1, 10, 100],
            Mode::Exact => vec![1, 2, 4, 8],
            Mode::Readout | Mode::Tmin => vec![10, 100, 1000, 10_000],
            Mode::Sweep => vec![1, 10, 100, 1000],
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected one of discrete, meanfield, exact, readout, tmin, sweep)"))
    }
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub delta: f64,
    pub epsilon0: f64,
    pub duration: f64,
    pub gamma_x: Vec<f64>,
    pub gamma_z: Vec<f64>,
    pub bosons: Vec<u32>,
    pub measurements: Vec<u64>,
    pub samples: usize,
    pub target_pe: f64,
    pub rtol: f64,
    pub atol: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    pub rel_precision: f64,
    pub exact_cross_check_max: u32,
    pub output_dir: PathBuf,
}

impl RunConfig {
    /// Defaults for `mode`; the physical regime is `delta = 1`,
    /// `epsilon0 = 10`, `gamma_x = 0.1`, `gamma_z = 0`.
    pub fn defaults(mode: Mode) -> Self {
        let tmin = TminSearch::default();
        let tolerance = Tolerance::default();
        Self {
            mode,
            delta: 1.0,
            epsilon0: 10.0,
            duration: 20.0,
            gamma_x: vec![0.1],
            gamma_z: vec![0.0],
            bosons: mode.default_bosons(),
            measurements: vec![1_000, 10_000, 100_000, 1_000_000, 10_000_000],
            samples: 2000,
            target_pe: DEFAULT_TARGET_PE,
            rtol: tolerance.rtol,
            atol: tolerance.atol,
            t_lo: tmin.t_lo,
            t_hi: tmin.t_hi,
            rel_precision: tmin.rel_precision,
            exact_cross_check_max: 20,
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn schedule(&self) -> SweepSchedule {
        SweepSchedule::new(self.epsilon0, self.delta, self.duration)
            .expect("validated at parse time")
    }

    pub fn relaxations(&self) -> Vec<RelaxationConfig> {
        let mut out = Vec::new();
        for &gx in &self.gamma_x {
            for &gz in &self.gamma_z {
                out.push(RelaxationConfig::new(gx, gz).expect("validated at parse time"));
            }
        }
        out
    }

    pub fn solver(&self) -> DormandPrince {
        DormandPrince::new(Tolerance {
            rtol: self.rtol,
            atol: self.atol,
        })
    }

    pub fn tmin_search(&self) -> TminSearch {
        TminSearch {
            t_lo: self.t_lo,
            t_hi: self.t_hi,
            rel_precision: self.rel_precision,
            solver: self.solver(),
            exact_cross_check_max: self.exact_cross_check_max,
            ..TminSearch::default()
        }
    }

    /// Canonical `key = value` listing of every setting that affects results.
    /// The output directory is deliberately left out so that relocating a run
    /// does not change its files.
    pub fn echo(&self) -> Vec<String> {
        let floats = |v: &[f64]| {
            v.iter()
                .map(|x| format_float(*x))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let ints = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let bosons: Vec<u64> = self.bosons.iter().map(|&n| u64::from(n)).collect();
        vec![
            format!("run.mode = {}", self.mode),
            format!("schedule.delta = {}", format_float(self.delta)),
            format!("schedule.epsilon0 = {}", format_float(self.epsilon0)),
            format!("schedule.T = {}", format_float(self.duration)),
            format!("relaxation.gamma_x = {}", floats(&self.gamma_x)),
            format!("relaxation.gamma_z = {}", floats(&self.gamma_z)),
            format!("grid.N = {}", ints(&bosons)),
            format!("grid.n = {}", ints(&self.measurements)),
            format!("grid.samples = {}", self.samples),
            format!("readout.target_pe = {}", format_float(self.target_pe)),
            format!("tolerances.rtol = {}", format_float(self.rtol)),
            format!("tolerances.atol = {}", format_float(self.atol)),
            format!("tmin.t_lo = {}", format_float(self.t_lo)),
            format!("tmin.t_hi = {}", format_float(self.t_hi)),
            format!("tmin.rel_precision = {}", format_float(self.rel_precision)),
            format!(
                "tmin.exact_cross_check_max = {}",
                self.exact_cross_check_max
            ),
        ]
    }
}

/// Round-trip decimal with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    /// 1-based; 0 when the issue is not tied to a line.
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.key, self.message)
        } else {
            write!(f, "line {}: {}: {}", self.line, self.key, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} configuration problem(s)", self.0.len())?;
        for issue in &self.0 {
            write!(f, "\n  {issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Mode,
    Float,
    FloatGrid,
    IntGrid,
    Count,
    Path,
}

const KEYS: &[(&str, &str, Kind)] = &[
    ("run", "mode", Kind::Mode),
    ("schedule", "delta", Kind::Float),
    ("schedule", "epsilon0", Kind::Float),
    ("schedule", "T", Kind::Float),
    ("relaxation", "gamma_x", Kind::FloatGrid),
    ("relaxation", "gamma_z", Kind::FloatGrid),
    ("grid", "N", Kind::IntGrid),
    ("grid", "n", Kind::IntGrid),
    ("grid", "samples", Kind::Count),
    ("readout", "target_pe", Kind::Float),
    ("tolerances", "rtol", Kind::Float),
    ("tolerances", "atol", Kind::Float),
    ("tmin", "t_lo", Kind::Float),
    ("tmin", "t_hi", Kind::Float),
    ("tmin", "rel_precision", Kind::Float),
    ("tmin", "exact_cross_check_max", Kind::Count),
    ("output", "dir", Kind::Path),
];

#[derive(Debug, Clone)]
enum Value {
    Mode(Mode),
    Float(f64),
    Floats(Vec<f64>),
    Ints(Vec<u64>),
    Count(u64),
    Path(String),
}

fn parse_float(text: &str) -> Result<f64, String> {
    let x: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(x)
}

/// `log:a:b:k`.
fn parse_log_spec(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("`{spec}` is not of the form log:a:b:k"));
    }
    let a = parse_float(parts[1].trim())?;
    let b = parse_float(parts[2].trim())?;
    let k: usize = parts[3].trim().parse().map_err(|_| {
        format!(
            "point count `{}` is not a positive integer",
            parts[3].trim()
        )
    })?;
    match k {
        0 => Err("a log grid needs at least one point".into()),
        1 if a != b => Err(format!("`{spec}` asks for one point on a non-empty range")),
        1 => Ok(vec![10f64.powf(a)]),
        _ => Ok((0..k)
            .map(|i| 10f64.powf(a + (b - a) * i as f64 / (k - 1) as f64))
            .collect()),
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err("empty grid item".into());
        }
        if item.starts_with("log:") {
            out.extend(parse_log_spec(item)?);
        } else {
            out.push(parse_float(item)?);
        }
    }
    Ok(out)
}

fn parse_value(kind: Kind, text: &str) -> Result<Value, String> {
    match kind {
        Kind::Mode => text.parse().map(Value::Mode),
        Kind::Float => parse_float(text).map(Value::Float),
        Kind::FloatGrid => parse_grid(text).map(Value::Floats),
        Kind::IntGrid => {
            let mut ints = Vec::new();
            for x in parse_grid(text)? {
                let r = x.round();
                if !(1.0..=1e15).contains(&r) {
                    return Err(format!("`{x}` is not a positive integer"));
                }
                if (x - r).abs() > 1e-9 * r.max(1.0) && !text.contains("log:") {
                    return Err(format!("`{x}` is not an integer"));
                }
                let r = r as u64;
                if !ints.contains(&r) {
                    ints.push(r);
                }
            }
            Ok(Value::Ints(ints))
        }
        Kind::Count => text
            .parse::<u64>()
            .map(Value::Count)
            .map_err(|_| format!("`{text}` is not a non-negative integer")),
        Kind::Path => {
            if text.is_empty() {
                Err("empty path".into())
            } else {
                Ok(Value::Path(text.to_string()))
            }
        }
    }
}

struct Entry {
    line: usize,
    value: Value,
}

/// Parses and validates `text` for `mode`. A `[run] mode` entry, when
/// present, must agree with `mode`.
pub fn parse_config(text: &str, mode: Mode) -> Result<RunConfig, ConfigErrors> {
    let mut issues = Vec::new();
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut section: Option<String> = None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(';') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            match rest.strip_suffix(']') {
                Some(name) => {
                    let name = name.trim();
                    if KEYS.iter().any(|(s, _, _)| *s == name) {
                        section = Some(name.to_string());
                    } else {
                        issues.push(ConfigIssue {
                            line,
                            key: format!("[{name}]"),
                            message: "unknown section".into(),
                        });
                        section = None;
                    }
                }
                None => issues.push(ConfigIssue {
                    line,
                    key: trimmed.to_string(),
                    message: "malformed section header".into(),
                }),
            }
            continue;
        }
        let body = match trimmed.find(" #") {
            Some(i) => trimmed[..i].trim_end(),
            None => trimmed,
        };
        let Some((key, value)) = body.split_once('=') else {
            issues.push(ConfigIssue {
                line,
                key: body.to_string(),
                message: "expected `key = value`".into(),
            });
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(sec) = &section else {
            issues.push(ConfigIssue {
                line,
                key: key.to_string(),
                message: "key outside a known section".into(),
            });
            continue;
        };
        let path = format!("{sec}.{key}");
        let Some(&(_, _, kind)) = KEYS.iter().find(|(s, k, _)| s == sec && *k == key) else {
            issues.push(ConfigIssue {
                line,
                key: path,
                message: "unknown key".into(),
            });
            continue;
        };
        if let Some(previous) = entries.get(&path) {
            issues.push(ConfigIssue {
                line,
                key: path,
                message: format!("duplicate key (first set on line {})", previous.line),
            });
            continue;
        }
        match parse_value(kind, value) {
            Ok(value) => {
                entries.insert(path, Entry { line, value });
            }
            Err(message) => issues.push(ConfigIssue {
                line,
                key: path,
                message: format!("type mismatch: {message}"),
            }),
        }
    }

    let mut config = RunConfig::defaults(mode);
    let line_of = |key: &str| entries.get(key).map_or(0, |e| e.line);
    for (path, entry) in &entries {
        match (path.as_str(), &entry.value) {
            ("run.mode", Value::Mode(m)) => {
                if *m != mode {
                    issues.push(ConfigIssue {
                        line: entry.line,
                        key: path.clone(),
                        message: format!("config is for mode `{m}` but `{mode}` was requested"),
                    });
                }
            }
            ("schedule.delta", Value::Float(x)) => config.delta = *x,
            ("schedule.epsilon0", Value::Float(x)) => config.epsilon0 = *x,
            ("schedule.T", Value::Float(x)) => config.duration = *x,
            ("relaxation.gamma_x", Value::Floats(x)) => config.gamma_x = x.clone(),
            ("relaxation.gamma_z", Value::Floats(x)) => config.gamma_z = x.clone(),
            ("grid.N", Value::Ints(x)) => {
                config.bosons = Vec::new();
                for &n in x {
                    match u32::try_from(n) {
                        Ok(n) => config.bosons.push(n),
                        Err(_) => issues.push(ConfigIssue {
                            line: entry.line,
                            key: path.clone(),
                            message: format!("N = {n} is too large"),
                        }),
                    }
                }
            }
            ("grid.n", Value::Ints(x)) => config.measurements = x.clone(),
            ("grid.samples", Value::Count(x)) => config.samples = *x as usize,
            ("readout.target_pe", Value::Float(x)) => config.target_pe = *x,
            ("tolerances.rtol", Value::Float(x)) => config.rtol = *x,
            ("tolerances.atol", Value::Float(x)) => config.atol = *x,
            ("tmin.t_lo", Value::Float(x)) => config.t_lo = *x,
            ("tmin.t_hi", Value::Float(x)) => config.t_hi = *x,
            ("tmin.rel_precision", Value::Float(x)) => config.rel_precision = *x,
            ("tmin.exact_cross_check_max", Value::Count(x)) => {
                config.exact_cross_check_max = u32::try_from(*x).unwrap_or(u32::MAX)
            }
            ("output.dir", Value::Path(p)) => config.output_dir = PathBuf::from(p),
            _ => unreachable!("value kind fixed by the key table"),
        }
    }

    let mut fail = |key: &str, message: String| {
        issues.push(ConfigIssue {
            line: line_of(key),
            key: key.to_string(),
            message,
        })
    };

    if let Err(e) = SweepSchedule::new(config.epsilon0, config.delta, config.duration) {
        let key = match &e {
            bosezeno_core::Error::InvalidParameter { name: "delta", .. } => "schedule.delta",
            bosezeno_core::Error::InvalidParameter { name: "T", .. } => "schedule.T",
            _ => "schedule.epsilon0",
        };
        fail(key, e.to_string());
    }
    for (key, grid) in [
        ("relaxation.gamma_x", &config.gamma_x),
        ("relaxation.gamma_z", &config.gamma_z),
    ] {
        if grid.is_empty() {
            fail(key, "empty grid".into());
        }
        if let Some(bad) = grid.iter().find(|g| **g < 0.0) {
            fail(key, format!("relaxation rates must be >= 0 (got {bad})"));
        }
    }
    if config.bosons.is_empty() {
        fail("grid.N", "empty grid".into());
    }
    if config.measurements.is_empty() {
        fail("grid.n", "empty grid".into());
    }
    if config.samples < 2 {
        fail(
            "grid.samples",
            format!("at least 2 samples are required (got {})", config.samples),
        );
    }
    if !(config.target_pe > 0.0 && config.target_pe <= 0.5) {
        fail(
            "readout.target_pe",
            format!("must lie in (0, 1/2] (got {})", config.target_pe),
        );
    }
    if !(config.rtol > 0.0 && config.rtol < 1.0) {
        fail(
            "tolerances.rtol",
            format!("must lie in (0, 1) (got {})", config.rtol),
        );
    }
    if config.atol <= 0.0 {
        fail(
            "tolerances.atol",
            format!("must be > 0 (got {})", config.atol),
        );
    }
    if config.t_lo <= 0.0 {
        fail("tmin.t_lo", format!("must be > 0 (got {})", config.t_lo));
    }
    if config.t_hi <= config.t_lo {
        fail(
            "tmin.t_hi",
            format!("must exceed t_lo = {} (got {})", config.t_lo, config.t_hi),
        );
    }
    if !(config.rel_precision > 0.0 && config.rel_precision < 1.0) {
        fail(
            "tmin.rel_precision",
            format!("must lie in (0, 1) (got {})", config.rel_precision),
        );
    }
    if mode == Mode::Tmin && (config.gamma_x.len() != 1 || config.gamma_z.len() != 1) {
        fail(
            "relaxation",
            "tmin mode takes a single (gamma_x, gamma_z) pair".into(),
        );
    }

    issues.sort_by(|a, b| (a.line, &a.key).cmp(&(b.line, &b.key)));
    if issues.is_empty() {
        Ok(config)
    } else {
        Err(ConfigErrors(issues))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_meanfield_config_takes_defaults() {
        let config = parse_config("[run]\nmode = meanfield\n", Mode::Meanfield).unwrap();
        assert_eq!(config.delta, 1.0);
        assert_eq!(config.epsilon0, 10.0);
        assert_eq!(config.rtol, 1e-8);
        assert_eq!(config.atol, 1e-10);
        assert_eq!(config.samples, 2000);
        assert_eq!(config, RunConfig::defaults(Mode::Meanfield));
        assert_eq!(parse_config("", Mode::Meanfield).unwrap(), config);
    }

    #[test]
    fn full_config() {
        let text = "\
# sweep settings
[schedule]
delta = 0.5
epsilon0 = 8   # inline comment
T = 12.5

[relaxation]
gamma_x = 0.01, 0.1, 1
gamma_z = 0

[grid]
N = 1, 10, 100
n = log:3:5:3
samples = 500

[output]
dir = results/run1
";
        let config = parse_config(text, Mode::Meanfield).unwrap();
        assert_eq!(config.delta, 0.5);
        assert_eq!(config.epsilon0, 8.0);
        assert_eq!(config.duration, 12.5);
        assert_eq!(config.gamma_x, vec![0.01, 0.1, 1.0]);
        assert_eq!(config.bosons, vec![1, 10, 100]);
        assert_eq!(config.measurements, vec![1000, 10_000, 100_000]);
        assert_eq!(config.samples, 500);
        assert_eq!(config.output_dir, PathBuf::from("results/run1"));
        assert_eq!(config.relaxations().len(), 3);
    }

    #[test]
    fn log_grids() {
        let g = parse_grid("log:-3:2:6").unwrap();
        assert_eq!(g.len(), 6);
        for (x, e) in g.iter().zip([1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0]) {
            assert!((x / e - 1.0).abs() < 1e-12);
        }
        assert_eq!(parse_grid("1, log:1:1:1, 3").unwrap(), vec![1.0, 10.0, 3.0]);
        assert!(parse_grid("log:1:2").is_err());
        assert!(parse_grid("log:1:2:0").is_err());
        assert!(parse_grid("1,,2").is_err());
    }

    #[test]
    fn zero_gap_is_rejected_citing_the_gap() {
        let err = parse_config("[schedule]\ndelta = 0\n", Mode::Meanfield).unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert_eq!(err.0[0].line, 2);
        assert_eq!(err.0[0].key, "schedule.delta");
        assert!(
            err.0[0].message.contains("kappa diverges"),
            "{}",
            err.0[0].message
        );
    }

    #[test]
    fn negative_relaxation_is_rejected() {
        let err = parse_config("[relaxation]\ngamma_x = -1\n", Mode::Meanfield).unwrap_err();
        assert_eq!(err.0[0].key, "relaxation.gamma_x");
        assert_eq!(err.0[0].line, 2);
    }

    #[test]
    fn all_violations_are_reported() {
        let text = "\
[schedule]
delta = abc
colour = blue
[nonsense]
x = 1
[grid]
N = 0
samples = 1
samples = 3
[readout]
target_pe = 0.9
[run]
mode = exact
";
        let err = parse_config(text, Mode::Meanfield).unwrap_err();
        let keys: Vec<(usize, &str)> = err.0.iter().map(|i| (i.line, i.key.as_str())).collect();
        assert_eq!(
            keys,
            vec![
                (2, "schedule.delta"),
                (3, "schedule.colour"),
                (4, "[nonsense]"),
                (5, "x"),
                (7, "grid.N"),
                (8, "grid.samples"),
                (9, "grid.samples"),
                (11, "readout.target_pe"),
                (13, "run.mode"),
            ]
        );
        assert!(err.to_string().starts_with("9 configuration problem(s)"));
    }

    #[test]
    fn non_integer_boson_counts_are_rejected() {
        assert!(parse_config("[grid]\nN = 2.5\n", Mode::Exact).is_err());
        // log grids round to the nearest integer
        let config = parse_config("[grid]\nN = log:0:1:3\n", Mode::Exact).unwrap();
        assert_eq!(config.bosons, vec![1, 3, 10]);
    }

    #[test]
    fn tmin_needs_a_single_relaxation_pair() {
        let err = parse_config("[relaxation]\ngamma_x = 0.1, 1\n", Mode::Tmin).unwrap_err();
        assert_eq!(err.0[0].key, "relaxation");
    }

    #[test]
    fn weak_sweep_ratio_is_rejected() {
        let err = parse_config("[schedule]\nepsilon0 = 0.5\n", Mode::Meanfield).unwrap_err();
        assert_eq!(err.0[0].key, "schedule.epsilon0");
    }

    #[test]
    fn echo_is_canonical() {
        let a = parse_config("[schedule]\nT = 20\n[output]\ndir = a\n", Mode::Sweep).unwrap();
        let b = parse_config("[schedule]\nT = 2e1\n[output]\ndir = b\n", Mode::Sweep).unwrap();
        assert_eq!(a.echo(), b.echo());
        assert!(a
            .echo()
            .contains(&"schedule.T = 2.0000000000000000e1".to_string()));
    }
}
