//! Majority-vote readout in the Gaussian limit.
//!
//! Each of the `N` bosons is found in level `a` with probability `p`; the
//! answer is declared `a` when more than half of them are. The fraction of
//! bosons in `a` is modelled as a Gaussian with mean `p` and standard
//! deviation `sqrt(p (1 - p) / N)`, so the failure probability is
//!
//! ```text
//! P_e = erfc((p - 1/2) sqrt(N) / sqrt(2 p (1 - p))) / 2
//! ```
//!
//! Mean, spread and the 1/2 cut-off are all on the fraction scale. Ties at
//! exactly `N/2` are absorbed into the Gaussian; there is no binomial
//! correction.

use crate::error::{Error, Result};

pub const DEFAULT_TARGET_PE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutModel {
    bosons: u32,
    p: f64,
    target_pe: f64,
}

impl ReadoutModel {
    pub fn new(bosons: u32, p: f64, target_pe: f64) -> Result<Self> {
        check_bosons(bosons)?;
        check_probability(p)?;
        check_target(target_pe)?;
        Ok(Self {
            bosons,
            p,
            target_pe,
        })
    }

    pub fn bosons(&self) -> u32 {
        self.bosons
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn target_pe(&self) -> f64 {
        self.target_pe
    }

    pub fn failure_probability(&self) -> f64 {
        failure_probability_unchecked(self.p, self.bosons)
    }

    pub fn meets_target(&self) -> bool {
        self.failure_probability() <= self.target_pe
    }
}

fn check_bosons(bosons: u32) -> Result<()> {
    if bosons == 0 {
        return Err(Error::invalid("N", "at least one boson is required"));
    }
    Ok(())
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(
            "p",
            format!("probability must lie in [0, 1] (got {p})"),
        ));
    }
    Ok(())
}

/// Accepts `0 < target <= 1/2`; `1/2` is the degenerate threshold that any
/// `p >= 1/2` meets.
fn check_target(target_pe: f64) -> Result<()> {
    if !(target_pe > 0.0 && target_pe <= 0.5) {
        return Err(Error::invalid(
            "target_pe",
            format!("target failure probability must lie in (0, 1/2] (got {target_pe})"),
        ));
    }
    Ok(())
}

fn failure_probability_unchecked(p: f64, bosons: u32) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    let arg = (p - 0.5) * f64::from(bosons).sqrt() / (2.0 * p * (1.0 - p)).sqrt();
    0.5 * libm::erfc(arg)
}

/// Majority-vote failure probability for per-boson success `p`.
pub fn failure_probability(p: f64, bosons: u32) -> Result<f64> {
    check_bosons(bosons)?;
    check_probability(p)?;
    Ok(failure_probability_unchecked(p, bosons))
}

/// Smallest `p` (to within 1e-13) whose failure probability is at most
/// `target_pe`. The returned value always meets the target.
pub fn required_p(bosons: u32, target_pe: f64) -> Result<f64> {
    check_bosons(bosons)?;
    check_target(target_pe)?;
    let (mut lo, mut hi) = (0.5, 1.0);
    if failure_probability_unchecked(lo, bosons) <= target_pe {
        return Ok(lo);
    }
    if failure_probability_unchecked(hi, bosons) > target_pe {
        return Err(Error::Infeasible {
            best: hi,
            required: target_pe,
        });
    }
    // invariant: P_e(lo) > target >= P_e(hi)
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if failure_probability_unchecked(mid, bosons) <= target_pe {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
