//! Command-line front end: configuration parsing, mode orchestration and
//! deterministic CSV/SVG output.

pub mod config;
pub mod error;
pub mod plot;
pub mod run;
pub mod table;

pub use config::{parse_config, ConfigErrors, ConfigIssue, Mode, RunConfig};
pub use error::CliError;
pub use run::{columns, run, run_with_workers, RunReport};
pub use table::{config_hash, Cell, ResultTable};
