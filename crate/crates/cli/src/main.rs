use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bosezeno_cli::{parse_config, run_with_workers, CliError, Mode, RunConfig};

#[derive(Parser)]
#[command(
    name = "bosezeno",
    version,
    about = "Dissipative Landau-Zener sweeps of N two-mode bosons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete Zeno measurement success probability over an n-grid.
    Discrete(Common),
    /// Mean-field trajectories, one CSV per (N, gamma_x, gamma_z).
    Meanfield(Common),
    /// Exact Dicke-basis Lindblad trajectories (N <= 64).
    Exact(Common),
    /// Per-boson success probability required by majority-vote readout.
    Readout(Common),
    /// Minimum sweep time against N, with a power-law fit.
    Tmin(Common),
    /// Final lab probability over the (N, gamma_x, gamma_z) grid.
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding `[output] dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (all cores when omitted).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Assert that the run uses no randomness. Always true here.
    #[arg(long)]
    seedless: bool,
}

impl Command {
    fn split(self) -> (Mode, Common) {
        match self {
            Command::Discrete(c) => (Mode::Discrete, c),
            Command::Meanfield(c) => (Mode::Meanfield, c),
            Command::Exact(c) => (Mode::Exact, c),
            Command::Readout(c) => (Mode::Readout, c),
            Command::Tmin(c) => (Mode::Tmin, c),
            Command::Sweep(c) => (Mode::Sweep, c),
        }
    }
}

fn load(mode: Mode, common: &Common) -> Result<RunConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.clone(),
                source: e,
            })?;
            parse_config(&text, mode)?
        }
        None => RunConfig::defaults(mode),
    };
    if let Some(dir) = &common.out {
        config.output_dir = dir.clone();
    }
    Ok(config)
}

fn main() -> ExitCode {
    // fixed filter: the binary reads no environment variables
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .init();
    let (mode, common) = Cli::parse().command.split();
    if common.seedless {
        // nothing in the pipeline draws random numbers
        eprintln!("seedless: no random number source is used; outputs are fully deterministic");
    }
    let result = load(mode, &common)
        .and_then(|config| run_with_workers(&config, common.workers.map(|k| k as usize)));
    match result {
        Ok(report) => {
            for file in &report.files {
                println!("wrote {}", file.display());
            }
            if let Some(summary) = report.summary {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
