//! Minimum sweep duration meeting a readout target, and the log-log speedup
//! exponent across boson numbers.
//!
//! For each `N` the search looks for the smallest `T` in `[t_lo, t_hi]` whose
//! final mean-field `p_a` reaches `required_p(N, target_pe)`. A log-spaced
//! pre-scan checks that the success predicate switches from false to true
//! exactly once; bisection in `log T` then narrows the crossing. When the
//! pre-scan sees more than one switch, or the final bracket fails its
//! certificate, the search falls back to a full scan at `1e-3` in `log10 T`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact;
use crate::frame::{SampleGrid, SweepSchedule};
use crate::meanfield::{self, RelaxationConfig};
use crate::ode::DormandPrince;
use crate::readout;

/// Relative offset below `T_min` at which the predicate must fail.
pub const CERTIFICATE_OFFSET: f64 = 2e-3;
/// Resolution of the fallback scan in `log10 T`.
pub const FALLBACK_RESOLUTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TminSearch {
    pub t_lo: f64,
    pub t_hi: f64,
    /// Bisection stops once `hi / lo - 1` is at or below this.
    pub rel_precision: f64,
    pub prescan_points: usize,
    pub solver: DormandPrince,
    /// Re-evaluate `p_a(T_min)` with the exact oracle for `N` up to this
    /// value; zero disables the cross-check.
    pub exact_cross_check_max: u32,
}

impl Default for TminSearch {
    fn default() -> Self {
        Self {
            t_lo: 1e-4,
            t_hi: 1e4,
            rel_precision: 1e-3,
            prescan_points: 16,
            solver: DormandPrince::default(),
            exact_cross_check_max: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    /// Single crossing in the pre-scan, refined by bisection.
    Bisection,
    /// Pre-scan or certificate indicated non-monotonicity; full scan.
    GridScan,
    /// The target is already met at `t_lo`.
    AtLowerBound,
}

impl SearchMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMethod::Bisection => "bisection",
            SearchMethod::GridScan => "grid_scan",
            SearchMethod::AtLowerBound => "at_lower_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TminEntry {
    pub bosons: u32,
    pub t_min: f64,
    /// Final `p_a` at `t_min`.
    pub p_final: f64,
    /// Final `p_a` at `t_min * (1 - CERTIFICATE_OFFSET)`; below `required_p`
    /// unless the method is [`SearchMethod::AtLowerBound`].
    pub certificate_lo: f64,
    /// Final `p_a` at `t_min`; at or above `required_p`.
    pub certificate_hi: f64,
    pub required_p: f64,
    pub method: SearchMethod,
    pub exact_p_final: Option<f64>,
}

impl TminEntry {
    pub fn certificate_holds(&self) -> bool {
        self.certificate_hi >= self.required_p
            && (self.method == SearchMethod::AtLowerBound || self.certificate_lo < self.required_p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TminResult {
    pub target_pe: f64,
    /// Sorted by boson number.
    pub entries: Vec<TminEntry>,
}

impl TminResult {
    /// `T_min` is non-increasing in `N`.
    pub fn is_monotone(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].t_min <= w[0].t_min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of `ln T_min` about the fitted line.
    pub residual: f64,
    pub points: usize,
}

impl TminSearch {
    fn validate(&self) -> Result<()> {
        if !(self.t_lo > 0.0 && self.t_lo.is_finite()) {
            return Err(Error::invalid(
                "t_lo",
                format!("must be finite and > 0 (got {})", self.t_lo),
            ));
        }
        if !(self.t_hi > self.t_lo && self.t_hi.is_finite()) {
            return Err(Error::invalid(
                "t_hi",
                format!("must be finite and > t_lo (got {})", self.t_hi),
            ));
        }
        if !(self.rel_precision > 0.0 && self.rel_precision < 1.0) {
            return Err(Error::invalid(
                "rel_precision",
                format!("must lie in (0, 1) (got {})", self.rel_precision),
            ));
        }
        if self.prescan_points < 2 {
            return Err(Error::invalid(
                "prescan_points",
                "at least 2 points are required",
            ));
        }
        Ok(())
    }

    fn final_p(
        &self,
        bosons: u32,
        config: &RelaxationConfig,
        template: &SweepSchedule,
        t: f64,
    ) -> Result<f64> {
        let schedule = template.with_duration(t)?;
        meanfield::final_probability(config, &schedule, bosons, &self.solver)
    }

    fn log_grid(&self, points: usize) -> Vec<f64> {
        let (a, b) = (self.t_lo.ln(), self.t_hi.ln());
        let last = points - 1;
        (0..points)
            .map(|i| match i {
                0 => self.t_lo,
                i if i == last => self.t_hi,
                i => (a + (b - a) * i as f64 / last as f64).exp(),
            })
            .collect()
    }

    fn scan(
        &self,
        bosons: u32,
        config: &RelaxationConfig,
        template: &SweepSchedule,
        times: &[f64],
    ) -> Result<Vec<f64>> {
        times
            .par_iter()
            .map(|&t| self.final_p(bosons, config, template, t))
            .collect()
    }

    /// Narrows a `(fail, pass)` bracket in `log T`.
    fn bisect(
        &self,
        bosons: u32,
        config: &RelaxationConfig,
        template: &SweepSchedule,
        required: f64,
        mut lo: f64,
        mut hi: (f64, f64),
    ) -> Result<(f64, f64)> {
        while hi.0 > lo * (1.0 + self.rel_precision) {
            let mid = (lo * hi.0).sqrt();
            let p = self.final_p(bosons, config, template, mid)?;
            if p >= required {
                hi = (mid, p);
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Minimum sweep duration for `N` bosons; `template` fixes `epsilon0` and
    /// `delta`, its duration is ignored.
    pub fn solve(
        &self,
        bosons: u32,
        config: &RelaxationConfig,
        template: &SweepSchedule,
        target_pe: f64,
    ) -> Result<TminEntry> {
        self.validate()?;
        if config.gamma_x() == 0.0 {
            log::warn!(
                "T_min search without longitudinal relaxation: no many-boson speedup is expected"
            );
        }
        let required = readout::required_p(bosons, target_pe)?;
        let times = self.log_grid(self.prescan_points);
        let ps = self.scan(bosons, config, template, &times)?;
        let pass: Vec<bool> = ps.iter().map(|&p| p >= required).collect();

        let entry = |t_min: f64, p_final: f64, method: SearchMethod| -> Result<TminEntry> {
            let below = t_min * (1.0 - CERTIFICATE_OFFSET);
            Ok(TminEntry {
                bosons,
                t_min,
                p_final,
                certificate_lo: self.final_p(bosons, config, template, below)?,
                certificate_hi: p_final,
                required_p: required,
                method,
                exact_p_final: None,
            })
        };

        if pass[0] {
            return self.cross_check(
                entry(self.t_lo, ps[0], SearchMethod::AtLowerBound)?,
                config,
                template,
            );
        }
        let Some(first) = pass.iter().position(|&b| b) else {
            let best = ps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            return Err(Error::Infeasible { best, required });
        };
        let switches = pass.windows(2).filter(|w| w[0] != w[1]).count();
        if switches == 1 {
            let (t, p) = self.bisect(
                bosons,
                config,
                template,
                required,
                times[first - 1],
                (times[first], ps[first]),
            )?;
            let candidate = entry(t, p, SearchMethod::Bisection)?;
            if candidate.certificate_holds() {
                return self.cross_check(candidate, config, template);
            }
            log::info!("N = {bosons}: bisection certificate failed at T = {t}; falling back to a grid scan");
        } else {
            log::info!("N = {bosons}: pre-scan predicate switches {switches} times; falling back to a grid scan");
        }

        let decades = (self.t_hi / self.t_lo).log10();
        let points = (decades / FALLBACK_RESOLUTION).ceil() as usize + 1;
        let fine = self.log_grid(points);
        let fine_ps = self.scan(bosons, config, template, &fine)?;
        let first = fine_ps
            .iter()
            .position(|&p| p >= required)
            .expect("the pre-scan found a passing duration");
        if first == 0 {
            return self.cross_check(
                entry(self.t_lo, fine_ps[0], SearchMethod::AtLowerBound)?,
                config,
                template,
            );
        }
        let (t, p) = self.bisect(
            bosons,
            config,
            template,
            required,
            fine[first - 1],
            (fine[first], fine_ps[first]),
        )?;
        let candidate = entry(t, p, SearchMethod::GridScan)?;
        if !candidate.certificate_holds() {
            return Err(Error::Invariant(format!(
                "N = {bosons}: no bracketing certificate at T = {t} (p = {p}, below = {}, required = {required})",
                candidate.certificate_lo
            )));
        }
        self.cross_check(candidate, config, template)
    }

    fn cross_check(
        &self,
        mut entry: TminEntry,
        config: &RelaxationConfig,
        template: &SweepSchedule,
    ) -> Result<TminEntry> {
        if entry.bosons <= self.exact_cross_check_max.min(exact::N_MAX) {
            let schedule = template.with_duration(entry.t_min)?;
            let samples = exact::trajectory(
                config,
                &schedule,
                entry.bosons,
                SampleGrid::FinalOnly,
                &self.solver,
            )?;
            entry.exact_p_final = samples.last().map(|s| s.p_a);
        }
        Ok(entry)
    }

    /// Solves every `N` concurrently; entries come back sorted by `N`.
    pub fn solve_grid(
        &self,
        bosons: &[u32],
        config: &RelaxationConfig,
        template: &SweepSchedule,
        target_pe: f64,
    ) -> Result<TminResult> {
        let mut sorted = bosons.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let entries = sorted
            .par_iter()
            .map(|&n| self.solve(n, config, template, target_pe))
            .collect::<Result<Vec<_>>>()?;
        Ok(TminResult { target_pe, entries })
    }
}

/// Least-squares slope of `ln T_min` against `ln N` over the largest-`N` half
/// of the entries (the upper half rounds up for odd counts).
pub fn fit_exponent(entries: &[TminEntry]) -> Result<ExponentFit> {
    if entries.len() < 4 {
        return Err(Error::FitDomain(format!(
            "need at least 4 entries, got {}",
            entries.len()
        )));
    }
    let mut sorted: Vec<&TminEntry> = entries.iter().collect();
    sorted.sort_by_key(|e| e.bosons);
    let span = f64::from(sorted[sorted.len() - 1].bosons) / f64::from(sorted[0].bosons);
    if span < 100.0 {
        return Err(Error::FitDomain(format!(
            "N must span at least two decades, got a factor of {span}"
        )));
    }
    if let Some(e) = sorted
        .iter()
        .find(|e| !(e.t_min > 0.0 && e.t_min.is_finite()))
    {
        return Err(Error::FitDomain(format!(
            "non-positive T_min {} at N = {}",
            e.t_min, e.bosons
        )));
    }
    let top = &sorted[sorted.len() / 2..];
    let xs: Vec<f64> = top.iter().map(|e| f64::from(e.bosons).ln()).collect();
    let ys: Vec<f64> = top.iter().map(|e| e.t_min.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::FitDomain("the fit window holds a single N".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(ExponentFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
        points: xs.len(),
    })
}
