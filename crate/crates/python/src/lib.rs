//! Python bindings for the Pearson Bayes factor toolkit.
//!
//! ```python
//! import pbf
//! bf = pbf.pbf10(t=2.0, df=71.0, method="wendel")
//! bf.value, bf.flip().value
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pbf_core::bayes::{self, Alpha, SummaryStats};
use pbf_core::gamma::{self, QuotientMethod};
use pbf_core::sim::{self, ApproxMethod, SimConfig};
use pbf_core::stats::{self, Sample};

fn value_err(e: pbf_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_quotient_method(name: &str) -> PyResult<QuotientMethod> {
    name.parse().map_err(value_err)
}

fn parse_approx_methods(names: Option<Vec<String>>) -> PyResult<BTreeSet<ApproxMethod>> {
    match names {
        None => Ok(ApproxMethod::ALL.into_iter().collect()),
        Some(names) => names.iter().map(|n| n.parse().map_err(value_err)).collect(),
    }
}

fn stats_for(t: f64, df: f64, n_total: Option<u64>) -> PyResult<SummaryStats> {
    match n_total {
        Some(n) => SummaryStats::with_n_total(t, df, n).map_err(value_err),
        None => SummaryStats::new(t, df).map_err(value_err),
    }
}

/// A positive evidence ratio with its direction tag.
#[pyclass(frozen, name = "BayesFactor", module = "pbf")]
struct PyBayesFactor {
    inner: bayes::BayesFactor,
}

#[pymethods]
impl PyBayesFactor {
    /// The evidence ratio itself.
    #[getter]
    fn value(&self) -> f64 {
        self.inner.value()
    }

    /// Natural log of the evidence ratio.
    #[getter]
    fn log_value(&self) -> f64 {
        self.inner.log_value()
    }

    /// "H1/H0" or "H0/H1".
    #[getter]
    fn direction(&self) -> String {
        self.inner.direction().to_string()
    }

    /// The reciprocal ratio (direction toggled).
    fn flip(&self) -> PyBayesFactor {
        PyBayesFactor {
            inner: self.inner.flip(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "BayesFactor(value={:.6}, direction='{}')",
            self.inner.value(),
            self.inner.direction()
        )
    }
}

impl From<bayes::BayesFactor> for PyBayesFactor {
    fn from(inner: bayes::BayesFactor) -> Self {
        PyBayesFactor { inner }
    }
}

/// ln Γ(x) for x > 0.
#[pyfunction]
fn ln_gamma(x: f64) -> PyResult<f64> {
    gamma::ln_gamma(x).map_err(value_err)
}

/// The quotient Γ(ν/2)/Γ(ν/2 + 1/2), evaluated analytically.
#[pyfunction]
fn analytic_c(nu: f64) -> PyResult<f64> {
    gamma::analytic_c(nu).map_err(value_err)
}

/// Wendel's approximation √(2/ν) of the quotient.
#[pyfunction]
fn wendel_c(nu: f64) -> PyResult<f64> {
    gamma::wendel_c(nu).map_err(value_err)
}

/// Stirling-formula approximation √(2e·ν^(ν−1)/(ν+1)^ν) of the quotient.
#[pyfunction]
fn stirling_c(nu: f64) -> PyResult<f64> {
    gamma::stirling_c(nu).map_err(value_err)
}

/// Frame's approximation (8/(2ν²−2ν+1))^(1/4) of the quotient.
#[pyfunction]
fn frame_c(nu: f64) -> PyResult<f64> {
    gamma::frame_c(nu).map_err(value_err)
}

/// Stirling's formula √(2π)·x^(x−1/2)·e^(−x).
#[pyfunction]
fn stirling_gamma(x: f64) -> PyResult<f64> {
    gamma::stirling_gamma(x).map_err(value_err)
}

/// Log of Stirling's formula; finite far past the overflow point of Γ.
#[pyfunction]
fn ln_stirling_gamma(x: f64) -> PyResult<f64> {
    gamma::ln_stirling_gamma(x).map_err(value_err)
}

/// Frame's quotient formula (n² + (1−u²)/12)^(u/2).
#[pyfunction]
fn frame_quotient(n: f64, u: f64) -> PyResult<f64> {
    gamma::frame_quotient(n, u).map_err(value_err)
}

/// The quotient under a named engine: analytic, wendel, stirling or frame.
#[pyfunction]
#[pyo3(signature = (nu, method = "analytic"))]
fn quotient(nu: f64, method: &str) -> PyResult<f64> {
    gamma::quotient(nu, parse_quotient_method(method)?).map_err(value_err)
}

/// The t-dependent factor √((1/π)·(1 + t²/ν)^(ν−1)).
#[pyfunction]
fn tail_factor(t: f64, df: f64) -> PyResult<f64> {
    Ok(bayes::tail_factor(&stats_for(t, df, None)?))
}

/// Pearson Bayes factor for H1 over H0 at the default prior scale.
#[pyfunction]
#[pyo3(signature = (t, df, method = "analytic"))]
fn pbf10(t: f64, df: f64, method: &str) -> PyResult<PyBayesFactor> {
    let stats = stats_for(t, df, None)?;
    bayes::pbf10(&stats, parse_quotient_method(method)?)
        .map(Into::into)
        .map_err(value_err)
}

/// Pearson Bayes factor with a tunable prior scale alpha > -1.
#[pyfunction]
fn pbf10_general(t: f64, df: f64, alpha: f64) -> PyResult<PyBayesFactor> {
    let stats = stats_for(t, df, None)?;
    let alpha = Alpha::new(alpha).map_err(value_err)?;
    bayes::pbf10_general(&stats, alpha)
        .map(Into::into)
        .map_err(value_err)
}

/// BIC Bayes factor for H0 over H1; n_total is the total sample size N.
#[pyfunction]
fn bic_bf01(t: f64, df: f64, n_total: u64) -> PyResult<PyBayesFactor> {
    let stats = stats_for(t, df, Some(n_total))?;
    bayes::bic_bf01(&stats).map(Into::into).map_err(value_err)
}

/// 100·|approx − reference|/reference.
#[pyfunction]
fn percent_error(approx: f64, reference: f64) -> PyResult<f64> {
    bayes::percent_error(approx, reference).map_err(value_err)
}

/// Pooled-variance two-sample t-test; returns (t, degrees of freedom).
#[pyfunction]
fn two_sample_t(a: Vec<f64>, b: Vec<f64>) -> PyResult<(f64, f64)> {
    let result = stats::two_sample_t(&Sample::new(a), &Sample::new(b)).map_err(value_err)?;
    Ok((result.t, result.nu))
}

fn build_config(
    seed: u64,
    n_min: u32,
    n_max: u32,
    iterations: u32,
    methods: Option<Vec<String>>,
) -> PyResult<SimConfig> {
    let mut config = SimConfig::new(seed);
    config.n_min = n_min;
    config.n_max = n_max;
    config.iterations = iterations;
    config.methods = parse_approx_methods(methods)?;
    Ok(config)
}

/// Run the error-study grid; returns rows of
/// (n_total, method, mean_percent_error, iterations).
#[pyfunction]
#[pyo3(signature = (seed, n_min = 4, n_max = 100, iterations = 1000, methods = None))]
fn run_grid(
    py: Python<'_>,
    seed: u64,
    n_min: u32,
    n_max: u32,
    iterations: u32,
    methods: Option<Vec<String>>,
) -> PyResult<Vec<(u32, String, f64, u32)>> {
    let config = build_config(seed, n_min, n_max, iterations, methods)?;
    let run = py.detach(|| sim::run_grid(&config)).map_err(value_err)?;
    Ok(run
        .rows
        .into_iter()
        .map(|r| {
            (
                r.n_total,
                r.method.name().to_string(),
                r.mean_percent_error,
                r.iterations_used,
            )
        })
        .collect())
}

/// Run the error-study grid and write it as CSV to `path`.
#[pyfunction]
#[pyo3(signature = (path, seed, n_min = 4, n_max = 100, iterations = 1000, methods = None))]
fn simulate_csv(
    py: Python<'_>,
    path: &str,
    seed: u64,
    n_min: u32,
    n_max: u32,
    iterations: u32,
    methods: Option<Vec<String>>,
) -> PyResult<()> {
    let config = build_config(seed, n_min, n_max, iterations, methods)?;
    let run = py.detach(|| sim::run_grid(&config)).map_err(value_err)?;
    sim::emit_csv(&run.rows, Path::new(path)).map_err(value_err)
}

#[pymodule]
fn pbf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyBayesFactor>()?;
    m.add_function(wrap_pyfunction!(ln_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_c, m)?)?;
    m.add_function(wrap_pyfunction!(wendel_c, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_c, m)?)?;
    m.add_function(wrap_pyfunction!(frame_c, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(ln_stirling_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(frame_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(tail_factor, m)?)?;
    m.add_function(wrap_pyfunction!(pbf10, m)?)?;
    m.add_function(wrap_pyfunction!(pbf10_general, m)?)?;
    m.add_function(wrap_pyfunction!(bic_bf01, m)?)?;
    m.add_function(wrap_pyfunction!(percent_error, m)?)?;
    m.add_function(wrap_pyfunction!(two_sample_t, m)?)?;
    m.add_function(wrap_pyfunction!(run_grid, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_csv, m)?)?;
    Ok(())
}
