use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigErrors;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigErrors),
    #[error(transparent)]
    Core(#[from] bosezeno_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// One process exit code per error family.
    pub fn exit_code(&self) -> i32 {
        use bosezeno_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                E::InvalidParameter { .. } | E::Domain { .. } | E::IndexOutOfRange { .. } => 3,
                E::Integration(_) => 4,
                E::Invariant(_) => 5,
                E::Capacity { .. } => 6,
                E::Infeasible { .. } => 7,
                E::FitDomain(_) => 8,
            },
            CliError::Io { .. } => 9,
        }
    }
}
