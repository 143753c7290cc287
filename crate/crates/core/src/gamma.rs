//! Log-gamma kernel and the four interchangeable evaluations of the quotient
//! `C_nu = Γ(ν/2) / Γ(ν/2 + 1/2)`.
//!
//! The analytic engine evaluates the quotient through [`ln_gamma`]. The other
//! three replace it with closed forms that need nothing beyond elementary
//! functions:
//!
//! * Wendel's asymptotic limit for `Γ(x)/Γ(x + 1/2)` gives `√(2/ν)`;
//! * Stirling's formula for each gamma gives `√(2e · ν^(ν−1)/(ν+1)^ν)`;
//! * Frame's quotient formula at `u = −1/2`, `n = (2ν−1)/4` gives
//!   `(8/(2ν² − 2ν + 1))^(1/4)`.
//!
//! All four are strictly positive and strictly decreasing in ν, and the three
//! approximations converge to the analytic value as ν grows.

use crate::{Error, Result};

/// ln(π)
pub const LN_PI: f64 = 1.1447298858494002;

/// ln(2·√(e/π)), auxiliary constant of the Lanczos evaluation below.
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452;

/// ln(√(2π))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// Lanczos shift parameter r = g + 1/2 from Pugh's analysis.
const LANCZOS_R: f64 = 10.900511;

/// Partial-fraction coefficients d_k for the Lanczos series with r = 10.900511.
/// From "An Analysis of the Lanczos Gamma Approximation", G. R. Pugh, 2004,
/// p. 116; accurate to roughly 16 significant digits over the positive reals.
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

fn require(op: &'static str, value: f64, ok: bool, requirement: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            value,
            requirement,
        })
    }
}

fn lanczos_series(shifted: impl Fn(usize) -> f64) -> f64 {
    let mut s = LANCZOS_DK[0];
    for (k, dk) in LANCZOS_DK.iter().enumerate().skip(1) {
        s += dk / shifted(k);
    }
    s
}

/// Natural logarithm of the gamma function for x > 0.
///
/// Lanczos approximation in log space (no overflow for large x); relative
/// error is below 1e-13 over `[0.5, 1e6]`. Arguments in `(0, 0.5)` go through
/// the reflection formula.
pub fn ln_gamma(x: f64) -> Result<f64> {
    require("ln_gamma", x, x > 0.0, "x > 0 and finite")?;
    if x < 0.5 {
        let s = lanczos_series(|k| k as f64 - x);
        Ok(LN_PI
            - (std::f64::consts::PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / std::f64::consts::E).ln())
    } else {
        let s = lanczos_series(|k| x + k as f64 - 1.0);
        Ok(s.ln()
            + LN_2_SQRT_E_OVER_PI
            + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln())
    }
}

/// Which engine computes the quotient `C_nu`.
///
/// `Analytic` is the reference; the other three are its closed-form
/// approximations. (The BIC Bayes factor is a separate full-factor method,
/// not a quotient engine; see [`crate::bayes::bic_bf01`].)
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientMethod {
    Analytic,
    Wendel,
    Stirling,
    Frame,
}

impl QuotientMethod {
    pub const ALL: [QuotientMethod; 4] = [
        QuotientMethod::Analytic,
        QuotientMethod::Wendel,
        QuotientMethod::Stirling,
        QuotientMethod::Frame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuotientMethod::Analytic => "analytic",
            QuotientMethod::Wendel => "wendel",
            QuotientMethod::Stirling => "stirling",
            QuotientMethod::Frame => "frame",
        }
    }
}

impl std::fmt::Display for QuotientMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for QuotientMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(QuotientMethod::Analytic),
            "wendel" => Ok(QuotientMethod::Wendel),
            "stirling" => Ok(QuotientMethod::Stirling),
            "frame" => Ok(QuotientMethod::Frame),
            other => Err(Error::InvalidConfig(format!(
                "unknown quotient method `{other}` (expected analytic, wendel, stirling or frame)"
            ))),
        }
    }
}

/// `C_nu` evaluated analytically: `exp(ln Γ(ν/2) − ln Γ(ν/2 + 1/2))`.
pub fn analytic_c(nu: f64) -> Result<f64> {
    Ok(ln_quotient(nu, QuotientMethod::Analytic)?.exp())
}

/// Wendel's approximation `C_nu ≈ √(2/ν)`.
pub fn wendel_c(nu: f64) -> Result<f64> {
    Ok(ln_quotient(nu, QuotientMethod::Wendel)?.exp())
}

/// Stirling-formula approximation `C_nu ≈ √(2e · ν^(ν−1)/(ν+1)^ν)`.
///
/// Evaluated as `exp(½(1 + ln 2 + (ν−1)·ln ν − ν·ln(ν+1)))`; the power terms
/// would overflow f64 near ν ≈ 144 if formed directly.
pub fn stirling_c(nu: f64) -> Result<f64> {
    Ok(ln_quotient(nu, QuotientMethod::Stirling)?.exp())
}

/// Frame's quotient approximation `C_nu ≈ (8/(2ν² − 2ν + 1))^(1/4)`.
pub fn frame_c(nu: f64) -> Result<f64> {
    require("frame_c", nu, nu > 0.0, "nu > 0 and finite")?;
    Ok((8.0 / (2.0 * nu * nu - 2.0 * nu + 1.0)).powf(0.25))
}

/// Stirling's formula `Γ(x) ≈ √(2π) · x^(x−1/2) · e^(−x)`.
///
/// Computed as `exp` of [`ln_stirling_gamma`]; overflows to infinity past
/// x ≈ 171.6 like the gamma function itself — use the log form there.
pub fn stirling_gamma(x: f64) -> Result<f64> {
    Ok(ln_stirling_gamma(x)?.exp())
}

/// Log of Stirling's approximation: `ln √(2π) + (x − 1/2)·ln x − x`.
pub fn ln_stirling_gamma(x: f64) -> Result<f64> {
    require("stirling_gamma", x, x > 0.0, "x > 0 and finite")?;
    Ok(LN_SQRT_2PI + (x - 0.5) * x.ln() - x)
}

/// Frame's two-point quotient formula
/// `Γ(n + (1+u)/2) / Γ(n + (1−u)/2) ≈ (n² + (1−u²)/12)^(u/2)`.
pub fn frame_quotient(n: f64, u: f64) -> Result<f64> {
    require("frame_quotient", n, true, "n finite")?;
    require("frame_quotient", u, true, "u finite")?;
    let base = n * n + (1.0 - u * u) / 12.0;
    require("frame_quotient", base, base > 0.0, "n^2 + (1 - u^2)/12 > 0")?;
    Ok(base.powf(0.5 * u))
}

/// `C_nu` under the chosen engine.
pub fn quotient(nu: f64, method: QuotientMethod) -> Result<f64> {
    match method {
        QuotientMethod::Analytic => analytic_c(nu),
        QuotientMethod::Wendel => wendel_c(nu),
        QuotientMethod::Stirling => stirling_c(nu),
        QuotientMethod::Frame => frame_c(nu),
    }
}

/// `ln C_nu` under the chosen engine. Every engine is evaluated directly in
/// log space so that downstream Bayes factors can be assembled by summing
/// logs.
pub(crate) fn ln_quotient(nu: f64, method: QuotientMethod) -> Result<f64> {
    use std::f64::consts::LN_2;
    match method {
        QuotientMethod::Analytic => {
            require("analytic_c", nu, nu > 0.0, "nu > 0 and finite")?;
            Ok(ln_gamma(0.5 * nu)? - ln_gamma(0.5 * nu + 0.5)?)
        }
        QuotientMethod::Wendel => {
            require("wendel_c", nu, nu > 0.0, "nu > 0 and finite")?;
            Ok(0.5 * (LN_2 - nu.ln()))
        }
        QuotientMethod::Stirling => {
            require("stirling_c", nu, nu > 0.0, "nu > 0 and finite")?;
            Ok(0.5 * (1.0 + LN_2 + (nu - 1.0) * nu.ln() - nu * (nu + 1.0).ln()))
        }
        QuotientMethod::Frame => {
            require("frame_c", nu, nu > 0.0, "nu > 0 and finite")?;
            Ok(0.25 * (3.0 * LN_2 - (2.0 * nu * nu - 2.0 * nu + 1.0).ln()))
        }
    }
}
