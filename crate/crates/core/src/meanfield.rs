//! Hartree mean-field dynamics of the collective spin in the instantaneous
//! eigenframe.
//!
//! Convention: `Jz = (n_excited - n_ground) / 2`, so the instantaneous ground
//! state has `<Jz> = -N/2`, and `J- = P^dag Q` moves one boson from the
//! excited mode `Q` to the ground mode `P`. `<J->` is always the complex
//! conjugate of `<J+>` and is never stored.
//!
//! Equations of motion (`g` = gap, `k` = kappa):
//!
//! ```text
//! d<Jz>/dt = -k (<J+> + <J->)
//!            - Gx (N/2 + <Jz>) - Gx (N-1) (N/4 - <Jz>^2 / N)
//! d<J+>/dt = i g <J+> + 2 k <Jz>
//!            - (Gx/2) <J+> + Gx (N-1) <J+> <Jz> / N
//!            - (Gz/2) <J+>
//! ```
//!
//! The longitudinal (`Gx`) terms are the product-state factorization of the
//! exact Heisenberg terms `-Gx <J+ J->` and `Gx <J+ Jz>`; they are exact for
//! `N = 1` and keep the state inside the Bloch ball. The transverse (`Gz`)
//! channel is linear and carries no `N` dependence.
//!
//! Internally the state is integrated as `(<Jz>/N, <J+>/N)` so tolerances do
//! not depend on `N`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{FrameCoefficients, SampleGrid, SweepSchedule};
use crate::ode::{DormandPrince, OdeSystem};

/// Relative slack on the Bloch-ball bounds, per boson.
pub const STATE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RelaxationConfig {
    gamma_x: f64,
    gamma_z: f64,
}

impl RelaxationConfig {
    pub fn new(gamma_x: f64, gamma_z: f64) -> Result<Self> {
        for (name, value) in [("gamma_x", gamma_x), ("gamma_z", gamma_z)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::invalid(
                    name,
                    format!("relaxation rate must be finite and >= 0 (got {value})"),
                ));
            }
        }
        Ok(Self { gamma_x, gamma_z })
    }

    pub fn closed() -> Self {
        Self::default()
    }

    pub fn gamma_x(&self) -> f64 {
        self.gamma_x
    }

    pub fn gamma_z(&self) -> f64 {
        self.gamma_z
    }

    pub fn is_closed(&self) -> bool {
        self.gamma_x == 0.0 && self.gamma_z == 0.0
    }
}

/// `(<Jz>, <J+>)` in the instantaneous eigenframe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    pub jz: f64,
    pub jplus: Complex64,
}

impl MeanFieldState {
    /// All bosons in the ground mode.
    pub fn ground(bosons: u32) -> Self {
        Self {
            jz: -0.5 * f64::from(bosons),
            jplus: Complex64::new(0.0, 0.0),
        }
    }

    pub fn jminus(&self) -> Complex64 {
        self.jplus.conj()
    }

    pub fn check(&self, bosons: u32) -> Result<()> {
        let n = f64::from(bosons);
        let bound = 0.5 * n + STATE_TOLERANCE * n;
        if self.jz.abs().is_nan() || self.jz.abs() > bound {
            return Err(Error::Invariant(format!(
                "<Jz> = {} outside [-{bound}, {bound}]",
                self.jz
            )));
        }
        if self.jplus.norm().is_nan() || self.jplus.norm() > bound {
            return Err(Error::Invariant(format!(
                "|<J+>| = {} exceeds {bound}",
                self.jplus.norm()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub jz: f64,
    pub jplus: Complex64,
}

fn coherent(state: &MeanFieldState, frame: &FrameCoefficients) -> StateDerivative {
    StateDerivative {
        jz: -2.0 * frame.kappa * state.jplus.re,
        jplus: Complex64::i() * frame.gap * state.jplus + 2.0 * frame.kappa * state.jz,
    }
}

/// Coherent evolution plus longitudinal relaxation at rate `gamma_x`.
pub fn rhs_sigma_x(
    state: &MeanFieldState,
    t: f64,
    bosons: u32,
    gamma_x: f64,
    schedule: &SweepSchedule,
) -> Result<StateDerivative> {
    let frame = schedule.frame_at(t)?;
    let n = f64::from(bosons);
    let mut d = coherent(state, &frame);
    d.jz += -gamma_x * (0.5 * n + state.jz)
        - gamma_x * (n - 1.0) * (0.25 * n - state.jz * state.jz / n);
    d.jplus += -0.5 * gamma_x * state.jplus + gamma_x * (n - 1.0) * state.jplus * (state.jz / n);
    Ok(d)
}

/// Coherent evolution plus transverse relaxation (dephasing) at rate `gamma_z`.
pub fn rhs_sigma_z(
    state: &MeanFieldState,
    t: f64,
    gamma_z: f64,
    schedule: &SweepSchedule,
) -> Result<StateDerivative> {
    let frame = schedule.frame_at(t)?;
    let mut d = coherent(state, &frame);
    d.jplus += -0.5 * gamma_z * state.jplus;
    Ok(d)
}

/// Per-boson probability of finding a boson in the lab level `a`.
///
/// With `a = V P + U Q`,
/// `p_a = [V^2 (N/2 - <Jz>) + U^2 (N/2 + <Jz>) + 2 U V Re<J+>] / N`.
pub fn lab_probability(
    state: &MeanFieldState,
    frame: &FrameCoefficients,
    bosons: u32,
) -> Result<f64> {
    let n = f64::from(bosons);
    let p = (frame.v * frame.v * (0.5 * n - state.jz)
        + frame.u * frame.u * (0.5 * n + state.jz)
        + 2.0 * frame.u * frame.v * state.jplus.re)
        / n;
    if !(-STATE_TOLERANCE..=1.0 + STATE_TOLERANCE).contains(&p) {
        return Err(Error::Invariant(format!(
            "lab probability {p} outside [0, 1]"
        )));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Normalized mean-field system `(x, Re y, Im y) = (<Jz>, <J+>) / N`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MeanFieldSystem {
    schedule: SweepSchedule,
    pair_factor: f64,
    gamma_x: f64,
    gamma_z: f64,
}

impl MeanFieldSystem {
    pub(crate) fn new(schedule: SweepSchedule, bosons: u32, config: RelaxationConfig) -> Self {
        Self {
            schedule,
            pair_factor: f64::from(bosons) - 1.0,
            gamma_x: config.gamma_x,
            gamma_z: config.gamma_z,
        }
    }
}

impl OdeSystem for MeanFieldSystem {
    fn dim(&self) -> usize {
        3
    }

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) {
        let (x, yr, yi) = (y[0], y[1], y[2]);
        let gap = self.schedule.gap_unchecked(t);
        let kappa = self.schedule.kappa_unchecked(t);
        let gx = self.gamma_x;
        let collective = gx * self.pair_factor;
        let damping = 0.5 * gx + 0.5 * self.gamma_z - collective * x;
        dydt[0] = -2.0 * kappa * yr - gx * (0.5 + x) - collective * (0.25 - x * x);
        dydt[1] = -gap * yi + 2.0 * kappa * x - damping * yr;
        dydt[2] = gap * yr - damping * yi;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub jz: f64,
    pub jplus: Complex64,
    pub p_a: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub bosons: u32,
    pub samples: Vec<TrajectorySample>,
}

impl TrajectoryRecord {
    pub fn last(&self) -> &TrajectorySample {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }
}

/// Integrates the mean-field equations across the sweep window from `initial`
/// and records `(t, <Jz>, <J+>, p_a)` on `grid`.
pub fn integrate(
    initial: &MeanFieldState,
    config: &RelaxationConfig,
    schedule: &SweepSchedule,
    bosons: u32,
    grid: SampleGrid,
    solver: &DormandPrince,
) -> Result<TrajectoryRecord> {
    if bosons == 0 {
        return Err(Error::invalid("N", "at least one boson is required"));
    }
    initial.check(bosons)?;
    let n = f64::from(bosons);
    let system = MeanFieldSystem::new(*schedule, bosons, *config);
    let mut y = [initial.jz / n, initial.jplus.re / n, initial.jplus.im / n];
    let times = grid.times(schedule);
    let mut samples = Vec::with_capacity(times.len());
    solver.integrate(&system, schedule.start(), &mut y, &times, |t, y| {
        let state = MeanFieldState {
            jz: n * y[0],
            jplus: Complex64::new(n * y[1], n * y[2]),
        };
        let p_a = state
            .check(bosons)
            .and_then(|_| lab_probability(&state, &schedule.frame_unchecked(t), bosons))
            .map_err(|e| Error::Invariant(format!("{e} at t = {t}")))?;
        samples.push(TrajectorySample {
            t,
            jz: state.jz,
            jplus: state.jplus,
            p_a,
        });
        Ok::<(), Error>(())
    })?;
    Ok(TrajectoryRecord { bosons, samples })
}

/// Final lab probability `p_a(T/2)` starting from the ground state.
pub fn final_probability(
    config: &RelaxationConfig,
    schedule: &SweepSchedule,
    bosons: u32,
    solver: &DormandPrince,
) -> Result<f64> {
    let record = integrate(
        &MeanFieldState::ground(bosons),
        config,
        schedule,
        bosons,
        SampleGrid::FinalOnly,
        solver,
    )?;
    Ok(record.last().p_a)
}
