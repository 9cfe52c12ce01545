//! Landau-Zener sweeps of an `N`-boson two-mode system stabilized by Zeno
//! measurement.
//!
//! * [`frame`]: the linear sweep and its instantaneous eigenframe.
//! * [`discrete`]: survival under repeated projective measurement.
//! * [`meanfield`]: Hartree mean-field dynamics under longitudinal and
//!   transverse relaxation.
//! * [`exact`]: exact Lindblad evolution on the Dicke ladder, the small-`N`
//!   oracle for [`meanfield`].
//! * [`readout`]: majority-vote failure probability.
//! * [`tmin`]: minimum sweep time and the speedup exponent.
//!
//! All dynamics use `Jz = (n_excited - n_ground) / 2`; the initial and
//! instantaneous ground state has `<Jz> = -N/2`.
//!
//! ```
//! use bosezeno_core::meanfield::{final_probability, RelaxationConfig};
//! use bosezeno_core::{DormandPrince, SweepSchedule};
//!
//! let schedule = SweepSchedule::new(10.0, 1.0, 10.0)?;
//! let relax = RelaxationConfig::new(0.01, 0.0)?;
//! let p = final_probability(&relax, &schedule, 1000, &DormandPrince::default())?;
//! assert!(p > 0.99);
//! # Ok::<(), bosezeno_core::Error>(())
//! ```

pub mod discrete;
pub mod error;
pub mod exact;
pub mod frame;
pub mod meanfield;
pub mod ode;
pub mod readout;
pub mod tmin;

pub use discrete::{LowerBound, MeasurementPlan, SuccessReport};
pub use error::{Error, Result};
pub use exact::{DickeDensityMatrix, ExactSample};
pub use frame::{FrameCoefficients, SampleGrid, SweepSchedule};
pub use meanfield::{MeanFieldState, RelaxationConfig, TrajectoryRecord, TrajectorySample};
pub use ode::{DormandPrince, IntegrationError, Tolerance};
pub use readout::ReadoutModel;
pub use tmin::{ExponentFit, SearchMethod, TminEntry, TminResult, TminSearch};
