//! Adaptive Dormand-Prince 5(4) integrator for real-valued first-order systems.
//!
//! Steps are clamped so that every requested output time is hit exactly; no
//! interpolation is involved in sampling. The step controller is the standard
//! elementary controller with the error measured in the RMS norm
//! `sqrt(mean((err_i / (atol + rtol * max(|y_i|, |y_new_i|)))^2))`.

use thiserror::Error;

pub trait OdeSystem {
    fn dim(&self) -> usize;
    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]);
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntegrationError {
    #[error("step size underflow (h = {h:e}) at t = {t}")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step budget of {steps} exhausted at t = {t}")]
    TooManySteps { t: f64, steps: u64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("conserved quantity drifted by {drift:e} at t = {t}")]
    Drift { t: f64, drift: f64 },
}

impl IntegrationError {
    /// Last time at which the state was valid.
    pub fn last_valid_time(&self) -> f64 {
        match *self {
            IntegrationError::StepUnderflow { t, .. }
            | IntegrationError::TooManySteps { t, .. }
            | IntegrationError::NonFinite { t }
            | IntegrationError::Drift { t, .. } => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: u64,
    pub rejected: u64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DormandPrince {
    pub tolerance: Tolerance,
    pub max_steps: u64,
    /// Steps shorter than this fraction of the total span count as underflow.
    pub min_step_fraction: f64,
}

impl Default for DormandPrince {
    fn default() -> Self {
        Self {
            tolerance: Tolerance::default(),
            max_steps: 50_000_000,
            min_step_fraction: 1e-14,
        }
    }
}

impl DormandPrince {
    pub fn new(tolerance: Tolerance) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

struct Workspace {
    k: [Vec<f64>; 7],
    stage: Vec<f64>,
    y_new: Vec<f64>,
}

impl Workspace {
    fn new(dim: usize) -> Self {
        Self {
            k: std::array::from_fn(|_| vec![0.0; dim]),
            stage: vec![0.0; dim],
            y_new: vec![0.0; dim],
        }
    }
}

impl DormandPrince {
    /// Integrates `sys` from `(t0, y)` through every time in `outputs`
    /// (ascending, each `>= t0`), calling `observe` with the exact state at
    /// each of them. On return `y` holds the state at the last output.
    pub fn integrate<S, F, E>(
        &self,
        sys: &S,
        t0: f64,
        y: &mut [f64],
        outputs: &[f64],
        mut observe: F,
    ) -> Result<Stats, E>
    where
        S: OdeSystem + ?Sized,
        F: FnMut(f64, &[f64]) -> Result<(), E>,
        E: From<IntegrationError>,
    {
        let dim = sys.dim();
        assert_eq!(
            y.len(),
            dim,
            "state length does not match the system dimension"
        );
        debug_assert!(outputs.windows(2).all(|w| w[0] <= w[1]));
        let mut stats = Stats::default();
        let Some(&t_end) = outputs.last() else {
            return Ok(stats);
        };
        let span = (t_end - t0).abs().max(f64::MIN_POSITIVE);
        let h_min = self.min_step_fraction * span;

        let mut ws = Workspace::new(dim);
        let mut t = t0;
        sys.rhs(t, y, &mut ws.k[0]);
        stats.evaluations += 1;
        let mut h = self.initial_step(sys, t, y, &mut ws, span, &mut stats);

        for &target in outputs {
            while t < target {
                let remaining = target - t;
                let lands = h >= remaining * (1.0 - 1e-12);
                let step = if lands { remaining } else { h };
                if step < h_min && !lands {
                    return Err(IntegrationError::StepUnderflow { t, h: step }.into());
                }
                if stats.accepted + stats.rejected >= self.max_steps {
                    return Err(IntegrationError::TooManySteps {
                        t,
                        steps: self.max_steps,
                    }
                    .into());
                }
                let err = self.attempt(sys, t, y, step, &mut ws);
                stats.evaluations += 6;
                if !err.is_finite() {
                    // treat as a failed step; a non-finite state at a tiny step is fatal
                    if step < h_min * 10.0 {
                        return Err(IntegrationError::NonFinite { t }.into());
                    }
                    stats.rejected += 1;
                    h = step * FAC_MIN;
                    continue;
                }
                let factor = if err == 0.0 {
                    FAC_MAX
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, FAC_MAX)
                };
                if err <= 1.0 {
                    stats.accepted += 1;
                    t = if lands { target } else { t + step };
                    y.copy_from_slice(&ws.y_new);
                    // FSAL: the last stage is the derivative at the new point
                    ws.k.swap(0, 6);
                    // a clamped step says nothing about the achievable step size
                    if !lands || step >= h {
                        h = step * factor;
                    }
                } else {
                    stats.rejected += 1;
                    h = step * factor.min(1.0);
                }
            }
            observe(t, y)?;
        }
        Ok(stats)
    }

    /// One trial step; leaves the candidate in `ws.y_new` and the FSAL stage
    /// in `ws.k[6]`. Returns the scaled error norm.
    fn attempt<S: OdeSystem + ?Sized>(
        &self,
        sys: &S,
        t: f64,
        y: &[f64],
        h: f64,
        ws: &mut Workspace,
    ) -> f64 {
        let n = y.len();
        let Workspace { k, stage, y_new } = ws;

        for i in 0..n {
            stage[i] = y[i] + h * A21 * k[0][i];
        }
        sys.rhs(t + C2 * h, stage, &mut k[1]);
        for i in 0..n {
            stage[i] = y[i] + h * (A31 * k[0][i] + A32 * k[1][i]);
        }
        sys.rhs(t + C3 * h, stage, &mut k[2]);
        for i in 0..n {
            stage[i] = y[i] + h * (A41 * k[0][i] + A42 * k[1][i] + A43 * k[2][i]);
        }
        sys.rhs(t + C4 * h, stage, &mut k[3]);
        for i in 0..n {
            stage[i] = y[i] + h * (A51 * k[0][i] + A52 * k[1][i] + A53 * k[2][i] + A54 * k[3][i]);
        }
        sys.rhs(t + C5 * h, stage, &mut k[4]);
        for i in 0..n {
            stage[i] = y[i]
                + h * (A61 * k[0][i]
                    + A62 * k[1][i]
                    + A63 * k[2][i]
                    + A64 * k[3][i]
                    + A65 * k[4][i]);
        }
        sys.rhs(t + h, stage, &mut k[5]);
        for i in 0..n {
            y_new[i] = y[i]
                + h * (A71 * k[0][i]
                    + A73 * k[2][i]
                    + A74 * k[3][i]
                    + A75 * k[4][i]
                    + A76 * k[5][i]);
        }
        sys.rhs(t + h, y_new, &mut k[6]);

        let tol = &self.tolerance;
        let mut sum = 0.0;
        for i in 0..n {
            let e = h
                * (E1 * k[0][i]
                    + E3 * k[2][i]
                    + E4 * k[3][i]
                    + E5 * k[4][i]
                    + E6 * k[5][i]
                    + E7 * k[6][i]);
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            let r = e / scale;
            sum += r * r;
        }
        (sum / n.max(1) as f64).sqrt()
    }

    /// Starting step from the usual two-derivative estimate.
    fn initial_step<S: OdeSystem + ?Sized>(
        &self,
        sys: &S,
        t: f64,
        y: &[f64],
        ws: &mut Workspace,
        span: f64,
        stats: &mut Stats,
    ) -> f64 {
        let n = y.len().max(1) as f64;
        let tol = &self.tolerance;
        let scale = |v: f64| tol.atol + tol.rtol * v.abs();
        let d0 = (y.iter().map(|&v| (v / scale(v)).powi(2)).sum::<f64>() / n).sqrt();
        let d1 = (y
            .iter()
            .zip(&ws.k[0])
            .map(|(&v, &f)| (f / scale(v)).powi(2))
            .sum::<f64>()
            / n)
            .sqrt();
        let h0 = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6 * span
        } else {
            (0.01 * d0 / d1).min(span)
        };
        for (s, (&v, &f)) in ws.stage.iter_mut().zip(y.iter().zip(&ws.k[0])) {
            *s = v + h0 * f;
        }
        sys.rhs(t + h0, &ws.stage, &mut ws.k[1]);
        stats.evaluations += 1;
        let d2 = (y
            .iter()
            .zip(ws.k[1].iter().zip(&ws.k[0]))
            .map(|(&v, (&f1, &f0))| ((f1 - f0) / scale(v)).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
            / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (1e-6f64).max(h0 * 1e-3)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(span)
    }
}
