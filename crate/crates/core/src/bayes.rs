//! Bayes factors from two-sample summary statistics.
//!
//! The Pearson Bayes factor for H1 (different means) over H0 (equal means)
//! factors into the gamma quotient `C_nu` and a t-dependent tail:
//!
//! ```text
//! PBF_10 = C_nu · √((1/π) · (1 + t²/ν)^(ν−1))
//! ```
//!
//! Every factor here is assembled by summing logs; the power term overflows
//! f64 long before the factor itself stops being meaningful.

use crate::gamma::{self, QuotientMethod, LN_PI};
use crate::{Error, Result};

/// Which hypothesis sits in the numerator of the evidence ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    H1OverH0,
    H0OverH1,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::H1OverH0 => Direction::H0OverH1,
            Direction::H0OverH1 => Direction::H1OverH0,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::H1OverH0 => f.write_str("H1/H0"),
            Direction::H0OverH1 => f.write_str("H0/H1"),
        }
    }
}

/// A positive evidence ratio, stored as its natural log plus a direction tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesFactor {
    log_value: f64,
    direction: Direction,
}

impl BayesFactor {
    fn new(log_value: f64, direction: Direction) -> Self {
        debug_assert!(log_value.is_finite());
        BayesFactor {
            log_value,
            direction,
        }
    }

    /// Natural log of the evidence ratio.
    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    /// The evidence ratio itself.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// The reciprocal ratio: negates the log, toggles the direction.
    pub fn flip(self) -> BayesFactor {
        BayesFactor::new(-self.log_value, self.direction.flipped())
    }

    /// This factor expressed on the H1-over-H0 scale (flipping if needed).
    pub fn as_h1_over_h0(self) -> BayesFactor {
        match self.direction {
            Direction::H1OverH0 => self,
            Direction::H0OverH1 => self.flip(),
        }
    }
}

/// The summary statistics a user supplies: observed t, degrees of freedom,
/// and (only when the BIC factor is wanted) the total sample size N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    t: f64,
    nu: f64,
    n_total: Option<u64>,
}

impl SummaryStats {
    pub fn new(t: f64, nu: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Domain {
                op: "SummaryStats",
                value: t,
                requirement: "t finite",
            });
        }
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::Domain {
                op: "SummaryStats",
                value: nu,
                requirement: "nu > 0 and finite",
            });
        }
        Ok(SummaryStats {
            t,
            nu,
            n_total: None,
        })
    }

    /// Like [`SummaryStats::new`] but with the total sample size attached.
    /// N must be at least 3 so that ν = N − 2 is at least 1 in the two-sample
    /// design.
    pub fn with_n_total(t: f64, nu: f64, n_total: u64) -> Result<Self> {
        if n_total < 3 {
            return Err(Error::Domain {
                op: "SummaryStats",
                value: n_total as f64,
                requirement: "n_total >= 3",
            });
        }
        let mut stats = SummaryStats::new(t, nu)?;
        stats.n_total = Some(n_total);
        Ok(stats)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn n_total(&self) -> Option<u64> {
        self.n_total
    }
}

/// Scale parameter of the Pearson Type-VI prior on effect size.
///
/// Must exceed −1 so the gamma arguments α+1 and α+3/2 stay positive. The
/// default −1/2 collapses the general factor to the standard one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > -1.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::Domain {
                op: "Alpha",
                value,
                requirement: "alpha > -1 and finite",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha(-0.5)
    }
}

pub(crate) fn ln_tail_factor(stats: &SummaryStats) -> f64 {
    let (t, nu) = (stats.t(), stats.nu());
    0.5 * ((nu - 1.0) * (t * t / nu).ln_1p() - LN_PI)
}

/// The t-dependent part of the Pearson Bayes factor,
/// `√((1/π) · (1 + t²/ν)^(ν−1))`.
pub fn tail_factor(stats: &SummaryStats) -> f64 {
    ln_tail_factor(stats).exp()
}

/// Pearson Bayes factor for H1 over H0 at the default prior scale, with the
/// quotient computed by the chosen engine.
pub fn pbf10(stats: &SummaryStats, method: QuotientMethod) -> Result<BayesFactor> {
    let ln_c = gamma::ln_quotient(stats.nu(), method)?;
    Ok(BayesFactor::new(
        ln_c + ln_tail_factor(stats),
        Direction::H1OverH0,
    ))
}

/// Pearson Bayes factor with a tunable prior scale α:
///
/// ```text
/// PBF_10 = Γ(ν/2)·Γ(α+3/2) / (Γ((ν+1)/2)·Γ(α+1)) · (1 + t²/ν)^((ν−2α−2)/2)
/// ```
///
/// Analytic evaluation only; at α = −1/2 this equals
/// `pbf10(stats, QuotientMethod::Analytic)`.
pub fn pbf10_general(stats: &SummaryStats, alpha: Alpha) -> Result<BayesFactor> {
    let (t, nu) = (stats.t(), stats.nu());
    let a = alpha.value();
    let ln_prefactor = gamma::ln_gamma(0.5 * nu)? + gamma::ln_gamma(a + 1.5)?
        - gamma::ln_gamma(0.5 * (nu + 1.0))?
        - gamma::ln_gamma(a + 1.0)?;
    let ln_power = 0.5 * (nu - 2.0 * a - 2.0) * (t * t / nu).ln_1p();
    Ok(BayesFactor::new(
        ln_prefactor + ln_power,
        Direction::H1OverH0,
    ))
}

/// BIC Bayes factor for H0 over H1, `BF_01 ≈ √(n · (1 + t²/ν)^(−n))`,
/// where n is the total sample size N.
pub fn bic_bf01(stats: &SummaryStats) -> Result<BayesFactor> {
    let n = stats.n_total().ok_or(Error::MissingSampleSize)? as f64;
    let (t, nu) = (stats.t(), stats.nu());
    let ln_bf01 = 0.5 * (n.ln() - n * (t * t / nu).ln_1p());
    Ok(BayesFactor::new(ln_bf01, Direction::H0OverH1))
}

/// `100 · |approx − reference| / reference`, both on the same (BF_10) scale.
pub fn percent_error(approx: f64, reference: f64) -> Result<f64> {
    if !(approx.is_finite() && approx >= 0.0) {
        return Err(Error::Domain {
            op: "percent_error",
            value: approx,
            requirement: "approx >= 0 and finite",
        });
    }
    if !(reference.is_finite() && reference > 0.0) {
        return Err(Error::Domain {
            op: "percent_error",
            value: reference,
            requirement: "reference > 0 and finite",
        });
    }
    Ok(100.0 * (approx - reference).abs() / reference)
}
