//! Pearson Bayes factors for two-sample designs, computed from summary
//! statistics alone (the observed t score and its degrees of freedom).
//!
//! The crate is organized around the gamma quotient
//! `C_nu = Γ(ν/2) / Γ(ν/2 + 1/2)` that appears in the Pearson Bayes factor:
//!
//! * [`gamma`] — log-gamma kernel and four interchangeable evaluations of
//!   `C_nu` (analytic, Wendel, Stirling, Frame);
//! * [`bayes`] — the Bayes factors themselves (Pearson default and general
//!   prior scale, BIC baseline) plus percent-error comparison;
//! * [`stats`] — seeded pseudo-random sampling and the pooled two-sample
//!   t-test used by the error study;
//! * [`sim`] — the error-study grid (mean percent error per total sample
//!   size and method) with CSV output.
//!
//! All numeric operations are pure functions; anything outside an
//! operation's domain is rejected eagerly with [`Error::Domain`] instead of
//! propagating NaN.

use std::path::PathBuf;

pub mod bayes;
pub mod gamma;
pub mod sim;
pub mod stats;

/// Error type shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("{op}: argument {value} out of domain (requires {requirement})")]
    Domain {
        op: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// The BIC Bayes factor needs the total sample size N.
    #[error("the BIC Bayes factor requires the total sample size N")]
    MissingSampleSize,

    /// Fewer than two observations in a sample; variance is undefined.
    #[error("need at least two observations per sample")]
    TooFewObservations,

    /// Both samples have zero variance, so the t statistic is undefined.
    #[error("degenerate data: both samples have zero variance")]
    DegenerateData,

    /// A configuration value was rejected before any computation ran.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An output destination could not be written (or parsed back).
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
