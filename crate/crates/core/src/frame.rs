//! Linear sweep schedule and the instantaneous eigenframe of the sweep Hamiltonian.
//!
//! The lab Hamiltonian is `H = -eps(t) Jz - delta Jx` with `eps(t) = v t` on
//! `[-T/2, T/2]`. Its instantaneous eigenmodes are
//!
//! ```text
//! P = U b + V a      (ground mode)
//! Q = U a - V b      (excited mode)
//! ```
//!
//! with `U, V >= 0`, `U^2 = (1 - eps/gap)/2`, `V^2 = (1 + eps/gap)/2` and
//! `gap = sqrt(eps^2 + delta^2)`. Moving with this frame produces the diabatic
//! coupling `kappa = V' U - U' V = v delta / (2 gap^2)`.
//!
//! Time is dimensionless; `delta = 1` is the natural energy unit.

use crate::error::{Error, Result};

/// Below this `epsilon0 / delta` ratio the sweep does not start deep in the
/// diabatic regime; schedules are accepted but a warning is logged.
pub const WEAK_SWEEP_RATIO: f64 = 5.0;

/// Linear ramp `eps(t) = 2 epsilon0 t / T` over `[-T/2, T/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSchedule {
    epsilon0: f64,
    delta: f64,
    duration: f64,
}

impl SweepSchedule {
    pub fn new(epsilon0: f64, delta: f64, duration: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid(
                "delta",
                format!(
                    "minimum gap must be finite and > 0 (got {delta}); kappa diverges otherwise"
                ),
            ));
        }
        if !(epsilon0.is_finite() && epsilon0 > delta) {
            return Err(Error::invalid(
                "epsilon0",
                format!("sweep amplitude must exceed the gap {delta} (got {epsilon0})"),
            ));
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::invalid(
                "T",
                format!("sweep duration must be finite and > 0 (got {duration})"),
            ));
        }
        if epsilon0 / delta < WEAK_SWEEP_RATIO {
            log::warn!(
                "epsilon0/delta = {} is below {WEAK_SWEEP_RATIO}; the sweep endpoints are not deep in the diabatic regime",
                epsilon0 / delta
            );
        }
        Ok(Self {
            epsilon0,
            delta,
            duration,
        })
    }

    /// Same amplitude and gap, different duration.
    pub fn with_duration(&self, duration: f64) -> Result<Self> {
        Self::new(self.epsilon0, self.delta, duration)
    }

    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Sweep rate `v = 2 epsilon0 / T`.
    pub fn rate(&self) -> f64 {
        2.0 * self.epsilon0 / self.duration
    }

    pub fn start(&self) -> f64 {
        -0.5 * self.duration
    }

    pub fn end(&self) -> f64 {
        0.5 * self.duration
    }

    fn check_time(&self, t: f64) -> Result<()> {
        // A few ulps of slack so that `start() + k * (T / n)` style grids land inside.
        let half = 0.5 * self.duration;
        let slack = 4.0 * f64::EPSILON * half;
        if t.is_finite() && t.abs() <= half + slack {
            Ok(())
        } else {
            Err(Error::Domain {
                t,
                lo: -half,
                hi: half,
            })
        }
    }

    pub fn epsilon_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.detuning(t))
    }

    pub fn frame_at(&self, t: f64) -> Result<FrameCoefficients> {
        self.check_time(t)?;
        Ok(self.frame_unchecked(t))
    }

    pub fn kappa_at(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.kappa_unchecked(t))
    }

    #[inline]
    pub(crate) fn detuning(&self, t: f64) -> f64 {
        self.rate() * t
    }

    #[inline]
    pub(crate) fn gap_unchecked(&self, t: f64) -> f64 {
        self.detuning(t).hypot(self.delta)
    }

    #[inline]
    pub(crate) fn kappa_unchecked(&self, t: f64) -> f64 {
        let eps = self.detuning(t);
        let gap_sq = eps * eps + self.delta * self.delta;
        self.rate() * self.delta / (2.0 * gap_sq)
    }

    #[inline]
    pub(crate) fn frame_unchecked(&self, t: f64) -> FrameCoefficients {
        FrameCoefficients::from_detuning(self.detuning(t), self.delta, self.rate())
    }
}

/// Which instants of the sweep window a solver reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleGrid {
    /// `samples` equally spaced points including both endpoints (at least 2).
    Uniform(usize),
    /// Only the end of the sweep.
    FinalOnly,
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid::Uniform(2000)
    }
}

impl SampleGrid {
    pub fn times(&self, schedule: &SweepSchedule) -> Vec<f64> {
        match *self {
            SampleGrid::FinalOnly => vec![schedule.end()],
            SampleGrid::Uniform(samples) => {
                let samples = samples.max(2);
                let last = samples - 1;
                (0..samples)
                    .map(|i| {
                        if i == last {
                            schedule.end()
                        } else {
                            schedule.start() + schedule.duration() * (i as f64 / last as f64)
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Eigenframe amplitudes and rates at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameCoefficients {
    /// Weight of the lab mode `b` in the ground mode `P`.
    pub u: f64,
    /// Weight of the lab mode `a` in the ground mode `P`.
    pub v: f64,
    /// Instantaneous level splitting `sqrt(eps^2 + delta^2)`.
    pub gap: f64,
    /// Diabatic coupling `kappa`.
    pub kappa: f64,
}

impl FrameCoefficients {
    /// Frame for detuning `eps`, gap `delta` and sweep rate `rate`.
    ///
    /// The small amplitude is formed as `delta^2 / (gap + |eps|)` instead of
    /// `gap - |eps|`, so `U(-eps) == V(eps)` holds bit-for-bit and the far
    /// tails keep full relative precision.
    pub fn from_detuning(eps: f64, delta: f64, rate: f64) -> Self {
        let gap = eps.hypot(delta);
        let abs_eps = eps.abs();
        let small_sq = delta * delta / (gap + abs_eps) / (2.0 * gap);
        let large_sq = (gap + abs_eps) / (2.0 * gap);
        let (u_sq, v_sq) = if eps >= 0.0 {
            (small_sq, large_sq)
        } else {
            (large_sq, small_sq)
        };
        Self {
            u: u_sq.sqrt(),
            v: v_sq.sqrt(),
            gap,
            kappa: rate * delta / (2.0 * gap * gap),
        }
    }
}
