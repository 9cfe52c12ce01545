use thiserror::Error;

use crate::ode::IntegrationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time {t} outside the sweep window [{lo}, {hi}]")]
    Domain { t: f64, lo: f64, hi: f64 },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: u64, lo: u64, hi: u64 },

    #[error(transparent)]
    Integration(#[from] IntegrationError),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{bosons} bosons exceed the dense oracle capacity of {max}")]
    Capacity { bosons: u32, max: u32 },

    #[error("infeasible: best achieved probability {best} is below the requirement {required}")]
    Infeasible { best: f64, required: f64 },

    #[error("cannot fit exponent: {0}")]
    FitDomain(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
