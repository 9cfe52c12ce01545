//! Exact Lindblad evolution on the permutation-symmetric Dicke ladder.
//!
//! Basis index `i = 0..=N` carries `m_i = i - N/2`, the eigenvalue of `Jz`
//! (same sign convention as [`crate::meanfield`]; `i = 0` is the ground
//! state). In the instantaneous eigenframe the state obeys
//!
//! ```text
//! drho/dt = -i [gap Jz + 2 kappa Jy, rho] + (Gx/2) D[J-] rho + (Gz/2) D[Jz] rho
//! D[c] rho = 2 c rho c^dag - c^dag c rho - rho c^dag c
//! ```
//!
//! with `Jy = (J+ - J-) / (2i)`. Every operator involved is at most
//! tridiagonal, so the right-hand side is evaluated element-wise in `O(N^2)`
//! without forming matrix products. Only the upper triangle is computed; the
//! lower triangle is its mirror, so Hermiticity is structural.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{SampleGrid, SweepSchedule};
use crate::meanfield::{lab_probability, MeanFieldState, RelaxationConfig};
use crate::ode::{DormandPrince, IntegrationError, OdeSystem};

/// Largest boson number the dense oracle accepts.
pub const N_MAX: u32 = 64;
pub const TRACE_TOLERANCE: f64 = 1e-9;
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;
pub const POSITIVITY_TOLERANCE: f64 = 1e-8;

type CMatrix = DMatrix<Complex64>;

fn check_capacity(bosons: u32) -> Result<()> {
    if bosons == 0 {
        return Err(Error::invalid("N", "at least one boson is required"));
    }
    if bosons > N_MAX {
        return Err(Error::Capacity { bosons, max: N_MAX });
    }
    Ok(())
}

/// `m_i` for every ladder index.
fn ladder_m(bosons: u32) -> Vec<f64> {
    let half = 0.5 * f64::from(bosons);
    (0..=bosons).map(|i| f64::from(i) - half).collect()
}

/// `c_i` with `J+ |i> = c_i |i+1>`; `c_N = 0`.
fn ladder_c(bosons: u32) -> Vec<f64> {
    let j = 0.5 * f64::from(bosons);
    ladder_m(bosons)
        .into_iter()
        .map(|m| (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOperators {
    pub jz: CMatrix,
    pub jplus: CMatrix,
    pub jminus: CMatrix,
    pub jy: CMatrix,
}

pub fn build_collective_operators(bosons: u32) -> Result<CollectiveOperators> {
    check_capacity(bosons)?;
    let dim = bosons as usize + 1;
    let m = ladder_m(bosons);
    let c = ladder_c(bosons);
    let jz = CMatrix::from_fn(dim, dim, |a, b| {
        if a == b {
            Complex64::from(m[a])
        } else {
            Complex64::default()
        }
    });
    let jplus = CMatrix::from_fn(dim, dim, |a, b| {
        if a == b + 1 {
            Complex64::from(c[b])
        } else {
            Complex64::default()
        }
    });
    let jminus = jplus.adjoint();
    let jy = (&jplus - &jminus) * Complex64::new(0.0, -0.5);
    Ok(CollectiveOperators {
        jz,
        jplus,
        jminus,
        jy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub trace_drift: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DickeDensityMatrix {
    bosons: u32,
    rho: CMatrix,
}

impl DickeDensityMatrix {
    /// `|m = -N/2><m = -N/2|`, all bosons in the ground mode.
    pub fn ground(bosons: u32) -> Result<Self> {
        check_capacity(bosons)?;
        let dim = bosons as usize + 1;
        let mut rho = CMatrix::zeros(dim, dim);
        rho[(0, 0)] = Complex64::from(1.0);
        Ok(Self { bosons, rho })
    }

    /// Uniform mixture over the Dicke ladder.
    pub fn maximally_mixed(bosons: u32) -> Result<Self> {
        check_capacity(bosons)?;
        let dim = bosons as usize + 1;
        let rho = CMatrix::identity(dim, dim) * Complex64::from(1.0 / dim as f64);
        Ok(Self { bosons, rho })
    }

    /// Validates `rho` against all density-matrix invariants.
    pub fn from_matrix(bosons: u32, rho: CMatrix) -> Result<Self> {
        check_capacity(bosons)?;
        let dim = bosons as usize + 1;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::invalid(
                "rho",
                format!(
                    "expected a {dim}x{dim} matrix, got {}x{}",
                    rho.nrows(),
                    rho.ncols()
                ),
            ));
        }
        let state = Self { bosons, rho };
        state.validate()?;
        Ok(state)
    }

    pub fn bosons(&self) -> u32 {
        self.bosons
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn population(&self, index: usize) -> f64 {
        self.rho[(index, index)].re
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // tr(rho rho) = sum |rho_ab|^2 for Hermitian rho
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn invariants(&self) -> InvariantReport {
        let dim = self.rho.nrows();
        let mut hermiticity: f64 = 0.0;
        for a in 0..dim {
            for b in a..dim {
                hermiticity = hermiticity.max((self.rho[(a, b)] - self.rho[(b, a)].conj()).norm());
            }
        }
        let hermitian = (&self.rho + self.rho.adjoint()) * Complex64::from(0.5);
        let min_eigenvalue = SymmetricEigen::new(hermitian).eigenvalues.min();
        InvariantReport {
            trace_drift: (self.trace() - Complex64::from(1.0)).norm(),
            hermiticity,
            min_eigenvalue,
        }
    }

    pub fn validate(&self) -> Result<InvariantReport> {
        let report = self.invariants();
        if report.trace_drift.is_nan() || report.trace_drift > TRACE_TOLERANCE {
            return Err(Error::Invariant(format!(
                "trace drift {:e}",
                report.trace_drift
            )));
        }
        self.check_shape(&report)?;
        Ok(report)
    }

    fn check_shape(&self, report: &InvariantReport) -> Result<()> {
        if report.hermiticity.is_nan() || report.hermiticity > HERMITICITY_TOLERANCE {
            return Err(Error::Invariant(format!(
                "density matrix not Hermitian (deviation {:e})",
                report.hermiticity
            )));
        }
        if report.min_eigenvalue.is_nan() || report.min_eigenvalue < -POSITIVITY_TOLERANCE {
            return Err(Error::Invariant(format!(
                "density matrix not positive (eigenvalue {:e})",
                report.min_eigenvalue
            )));
        }
        Ok(())
    }

    fn pack(&self) -> Vec<f64> {
        self.rho.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    fn unpack(bosons: u32, y: &[f64]) -> Self {
        let dim = bosons as usize + 1;
        let rho = CMatrix::from_iterator(
            dim,
            dim,
            y.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])),
        );
        Self { bosons, rho }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub jz: f64,
    pub jplus: Complex64,
}

impl Expectations {
    pub fn state(&self) -> MeanFieldState {
        MeanFieldState {
            jz: self.jz,
            jplus: self.jplus,
        }
    }
}

/// `(tr(rho Jz), tr(rho J+))`.
pub fn expectations(rho: &DickeDensityMatrix) -> Expectations {
    let m = ladder_m(rho.bosons);
    let c = ladder_c(rho.bosons);
    let r = &rho.rho;
    let jz = m.iter().enumerate().map(|(i, m)| m * r[(i, i)].re).sum();
    let jplus = (0..rho.bosons as usize).map(|i| r[(i, i + 1)] * c[i]).sum();
    Expectations { jz, jplus }
}

/// Right-hand side of the master equation on the column-major packed
/// `(re, im)` representation of `rho`.
#[derive(Debug, Clone)]
pub(crate) struct DickeSystem {
    schedule: SweepSchedule,
    dim: usize,
    m: Vec<f64>,
    c: Vec<f64>,
    /// `(J+ J-)_ii = c_{i-1}^2`.
    d: Vec<f64>,
    gamma_x: f64,
    gamma_z: f64,
}

impl DickeSystem {
    pub(crate) fn new(schedule: SweepSchedule, bosons: u32, config: RelaxationConfig) -> Self {
        let m = ladder_m(bosons);
        let c = ladder_c(bosons);
        let d = (0..c.len())
            .map(|i| if i == 0 { 0.0 } else { c[i - 1] * c[i - 1] })
            .collect();
        Self {
            schedule,
            dim: bosons as usize + 1,
            m,
            c,
            d,
            gamma_x: config.gamma_x(),
            gamma_z: config.gamma_z(),
        }
    }

    pub(crate) fn derivative(
        &self,
        gap: f64,
        kappa: f64,
        rho: &[Complex64],
        out: &mut [Complex64],
    ) {
        let n = self.dim;
        let at = |a: usize, b: usize| rho[a + n * b];
        let zero = Complex64::default();
        let i = Complex64::i();
        for b in 0..n {
            for a in 0..=b {
                let r = at(a, b);
                // (J+ rho - J- rho)_ab and (rho J+ - rho J-)_ab
                let left = if a > 0 {
                    self.c[a - 1] * at(a - 1, b)
                } else {
                    zero
                } - if a + 1 < n {
                    self.c[a] * at(a + 1, b)
                } else {
                    zero
                };
                let right = if b + 1 < n {
                    self.c[b] * at(a, b + 1)
                } else {
                    zero
                } - if b > 0 {
                    self.c[b - 1] * at(a, b - 1)
                } else {
                    zero
                };
                let commutator = gap * (self.m[a] - self.m[b]) * r - i * kappa * (left - right);
                let jump = if b + 1 < n {
                    2.0 * self.c[a] * self.c[b] * at(a + 1, b + 1)
                } else {
                    zero
                };
                let dm = self.m[a] - self.m[b];
                let mut value = -i * commutator
                    + 0.5 * self.gamma_x * (jump - (self.d[a] + self.d[b]) * r)
                    - 0.5 * self.gamma_z * dm * dm * r;
                if a == b {
                    value.im = 0.0;
                }
                out[a + n * b] = value;
                out[b + n * a] = value.conj();
            }
        }
    }
}

impl OdeSystem for DickeSystem {
    fn dim(&self) -> usize {
        2 * self.dim * self.dim
    }

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) {
        let gap = self.schedule.gap_unchecked(t);
        let kappa = self.schedule.kappa_unchecked(t);
        let rho: &[Complex64] = bytemuck::cast_slice(y);
        let out: &mut [Complex64] = bytemuck::cast_slice_mut(dydt);
        self.derivative(gap, kappa, rho, out);
    }
}

/// Integrates the master equation and hands every sample on `grid` to
/// `observe` after checking the density-matrix invariants.
///
/// Trace drift beyond [`TRACE_TOLERANCE`] is reported as an integration
/// failure; loss of Hermiticity or positivity as an invariant violation.
pub fn evolve_with<F>(
    rho0: &DickeDensityMatrix,
    config: &RelaxationConfig,
    schedule: &SweepSchedule,
    grid: SampleGrid,
    solver: &DormandPrince,
    mut observe: F,
) -> Result<()>
where
    F: FnMut(f64, &DickeDensityMatrix, &InvariantReport) -> Result<()>,
{
    rho0.validate()?;
    let bosons = rho0.bosons;
    let system = DickeSystem::new(*schedule, bosons, *config);
    let mut y = rho0.pack();
    let times = grid.times(schedule);
    solver.integrate(&system, schedule.start(), &mut y, &times, |t, y| {
        let rho = DickeDensityMatrix::unpack(bosons, y);
        let report = rho.invariants();
        if report.trace_drift.is_nan() || report.trace_drift > TRACE_TOLERANCE {
            return Err(Error::Integration(IntegrationError::Drift {
                t,
                drift: report.trace_drift,
            }));
        }
        rho.check_shape(&report)
            .map_err(|e| Error::Invariant(format!("{e} at t = {t}")))?;
        observe(t, &rho, &report)
    })?;
    Ok(())
}

/// Integrates the master equation and returns `(t, rho)` on `grid`.
pub fn evolve(
    rho0: &DickeDensityMatrix,
    config: &RelaxationConfig,
    schedule: &SweepSchedule,
    grid: SampleGrid,
    solver: &DormandPrince,
) -> Result<Vec<(f64, DickeDensityMatrix)>> {
    let mut out = Vec::new();
    evolve_with(rho0, config, schedule, grid, solver, |t, rho, _| {
        out.push((t, rho.clone()));
        Ok(())
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSample {
    pub t: f64,
    pub jz: f64,
    pub jplus: Complex64,
    pub p_a: f64,
    pub purity: f64,
    pub invariants: InvariantReport,
}

/// Expectation-value trajectory from the ground state, the exact counterpart
/// of [`crate::meanfield::integrate`].
pub fn trajectory(
    config: &RelaxationConfig,
    schedule: &SweepSchedule,
    bosons: u32,
    grid: SampleGrid,
    solver: &DormandPrince,
) -> Result<Vec<ExactSample>> {
    let rho0 = DickeDensityMatrix::ground(bosons)?;
    let mut out = Vec::new();
    evolve_with(&rho0, config, schedule, grid, solver, |t, rho, report| {
        let e = expectations(rho);
        let p_a = lab_probability(&e.state(), &schedule.frame_unchecked(t), bosons)?;
        out.push(ExactSample {
            t,
            jz: e.jz,
            jplus: e.jplus,
            p_a,
            purity: rho.purity(),
            invariants: *report,
        });
        Ok(())
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauZenerCheck {
    /// Excited-state population at the end of the closed single-boson sweep.
    pub excitation: f64,
    /// `exp(-pi delta^2 / (2 v))`.
    pub asymptote: f64,
}

impl LandauZenerCheck {
    pub fn relative_error(&self) -> f64 {
        (self.excitation - self.asymptote).abs() / self.asymptote
    }
}

/// Closed single-boson sweep compared with the Landau-Zener asymptote.
pub fn landau_zener_check(
    schedule: &SweepSchedule,
    solver: &DormandPrince,
) -> Result<LandauZenerCheck> {
    let ratio = schedule.epsilon0() / schedule.delta();
    if ratio < 10.0 {
        return Err(Error::invalid(
            "epsilon0",
            format!("the asymptotic comparison needs epsilon0/delta >= 10 (got {ratio})"),
        ));
    }
    let rho0 = DickeDensityMatrix::ground(1)?;
    let finals = evolve(
        &rho0,
        &RelaxationConfig::closed(),
        schedule,
        SampleGrid::FinalOnly,
        solver,
    )?;
    let (_, rho) = finals.last().expect("final sample");
    let delta = schedule.delta();
    Ok(LandauZenerCheck {
        excitation: rho.population(1),
        asymptote: (-std::f64::consts::PI * delta * delta / (2.0 * schedule.rate())).exp(),
    })
}
