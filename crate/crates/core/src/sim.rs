//! The approximation-error study: for every total sample size N in a range,
//! run many synthetic two-sample experiments and record the mean percent
//! error of each approximate Bayes factor against the analytic one.
//!
//! Each iteration of a cell (one N) follows six steps: draw an effect size
//! d ~ U(0,1); draw ⌈N/2⌉ observations from Normal(0,1) and ⌊N/2⌋ from
//! Normal(d,1); run the pooled t-test keeping (t, ν = N−2); compute the
//! analytic Pearson factor plus every requested approximation (the BIC
//! factor is converted to the BF_10 scale first); take the percent error of
//! each approximation. Per-cell randomness comes from a substream keyed by
//! `(seed, N, iteration)`, so the grid is reproducible under any degree of
//! parallelism.

use std::collections::BTreeSet;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::bayes::{bic_bf01, pbf10, percent_error, SummaryStats};
use crate::gamma::QuotientMethod;
use crate::stats::{two_sample_t, RngStream};
use crate::{Error, Result};

/// An approximate Bayes-factor method compared against the analytic factor.
///
/// Declaration order is alphabetical by name; rows sort by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ApproxMethod {
    Bic,
    Frame,
    Stirling,
    Wendel,
}

impl ApproxMethod {
    pub const ALL: [ApproxMethod; 4] = [
        ApproxMethod::Bic,
        ApproxMethod::Frame,
        ApproxMethod::Stirling,
        ApproxMethod::Wendel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ApproxMethod::Bic => "bic",
            ApproxMethod::Frame => "frame",
            ApproxMethod::Stirling => "stirling",
            ApproxMethod::Wendel => "wendel",
        }
    }
}

impl fmt::Display for ApproxMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ApproxMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bic" => Ok(ApproxMethod::Bic),
            "frame" => Ok(ApproxMethod::Frame),
            "stirling" => Ok(ApproxMethod::Stirling),
            "wendel" => Ok(ApproxMethod::Wendel),
            other => Err(Error::InvalidConfig(format!(
                "unknown method `{other}` (expected wendel, stirling, frame or bic)"
            ))),
        }
    }
}

/// Grid bounds, iteration count and master seed for the study.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub iterations: u32,
    pub seed: u64,
    pub methods: BTreeSet<ApproxMethod>,
    /// Also record the median percent error (extra CSV column).
    pub collect_median: bool,
}

impl SimConfig {
    /// Default grid: N from 4 to 100, 1000 iterations per N, all methods.
    pub fn new(seed: u64) -> Self {
        SimConfig {
            n_min: 4,
            n_max: 100,
            iterations: 1000,
            seed,
            methods: ApproxMethod::ALL.into_iter().collect(),
            collect_median: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min < 4 {
            return Err(Error::InvalidConfig(format!(
                "n_min must be at least 4, got {}",
                self.n_min
            )));
        }
        if self.n_min > self.n_max {
            return Err(Error::InvalidConfig(format!(
                "n_min {} exceeds n_max {}",
                self.n_min, self.n_max
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods selected".into()));
        }
        Ok(())
    }
}

/// One aggregated grid entry: mean percent error of `method` at `n_total`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub n_total: u32,
    pub method: ApproxMethod,
    pub mean_percent_error: f64,
    pub iterations_used: u32,
    /// Present only when the study was configured to collect medians.
    pub median_percent_error: Option<f64>,
}

/// Per-method aggregates for one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodError {
    pub method: ApproxMethod,
    pub mean: f64,
    pub median: f64,
}

/// Result of all iterations at one total sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub n_total: u32,
    pub errors: Vec<MethodError>,
    /// Iterations redrawn because both samples were constant (zero variance).
    /// Probability zero for continuous data; the guard exists for robustness.
    pub redraws: u32,
}

/// Rows of the whole grid plus the total redraw count.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRun {
    pub rows: Vec<ErrorRow>,
    pub redraws: u64,
}

/// Neumaier compensated sum; keeps the reduction independent of how work was
/// split across threads to well below 1e-12.
fn compensated_mean(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / values.len() as f64
}

fn median_of(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Run all iterations for one total sample size N.
pub fn run_cell(
    n_total: u32,
    iterations: u32,
    seed: u64,
    methods: &BTreeSet<ApproxMethod>,
) -> Result<CellResult> {
    if n_total < 4 {
        return Err(Error::InvalidConfig(format!(
            "total sample size must be at least 4, got {n_total}"
        )));
    }
    if iterations == 0 {
        return Err(Error::InvalidConfig("iterations must be at least 1".into()));
    }
    let nu = (n_total - 2) as f64;
    let n1 = (n_total as usize).div_ceil(2);
    let n2 = n_total as usize / 2;

    let mut per_method: Vec<Vec<f64>> = methods
        .iter()
        .map(|_| Vec::with_capacity(iterations as usize))
        .collect();
    let mut redraws = 0u32;

    for iteration in 0..iterations {
        let mut rng = RngStream::substream(seed, n_total, iteration);
        let test = loop {
            let d = rng.draw_uniform();
            let sample1 = rng.draw_normal(0.0, 1.0, n1)?;
            let sample2 = rng.draw_normal(d, 1.0, n2)?;
            match two_sample_t(&sample1, &sample2) {
                Ok(test) => break test,
                Err(Error::DegenerateData) => redraws += 1,
                Err(e) => return Err(e),
            }
        };

        let stats = SummaryStats::with_n_total(test.t, nu, n_total as u64)?;
        let reference = pbf10(&stats, QuotientMethod::Analytic)?.value();
        for (errors, &method) in per_method.iter_mut().zip(methods.iter()) {
            let approx = match method {
                ApproxMethod::Bic => bic_bf01(&stats)?.flip().value(),
                ApproxMethod::Wendel => pbf10(&stats, QuotientMethod::Wendel)?.value(),
                ApproxMethod::Stirling => pbf10(&stats, QuotientMethod::Stirling)?.value(),
                ApproxMethod::Frame => pbf10(&stats, QuotientMethod::Frame)?.value(),
            };
            errors.push(percent_error(approx, reference)?);
        }
    }

    let errors = methods
        .iter()
        .zip(&per_method)
        .map(|(&method, errs)| MethodError {
            method,
            mean: compensated_mean(errs),
            median: median_of(errs),
        })
        .collect();

    Ok(CellResult {
        n_total,
        errors,
        redraws,
    })
}

/// Run the full grid. One row per (N, method), ordered by N then method
/// name; bit-identical for a given seed regardless of thread count.
pub fn run_grid(config: &SimConfig) -> Result<SimRun> {
    config.validate()?;
    let cells: Vec<u32> = (config.n_min..=config.n_max).collect();
    let results: Vec<CellResult> = cells
        .par_iter()
        .map(|&n| run_cell(n, config.iterations, config.seed, &config.methods))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(results.len() * config.methods.len());
    let mut redraws = 0u64;
    for cell in results {
        redraws += cell.redraws as u64;
        for entry in cell.errors {
            rows.push(ErrorRow {
                n_total: cell.n_total,
                method: entry.method,
                mean_percent_error: entry.mean,
                iterations_used: config.iterations,
                median_percent_error: config.collect_median.then_some(entry.median),
            });
        }
    }
    Ok(SimRun { rows, redraws })
}

const CSV_HEADER: &str = "n_total,method,mean_percent_error,iterations";

/// `printf %.*g`-style formatting: `sig` significant digits, positional when
/// the exponent allows, scientific otherwise. Locale-independent.
fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if exponent < -4 || exponent >= sig as i32 {
        sci
    } else {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

/// Write rows as CSV (UTF-8, LF endings, mean errors at 10 significant
/// digits). The median column appears only when the rows carry medians.
pub fn write_csv<W: Write>(rows: &[ErrorRow], mut out: W) -> io::Result<()> {
    let with_median = rows.iter().any(|r| r.median_percent_error.is_some());
    if with_median {
        writeln!(out, "{CSV_HEADER},median_percent_error")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for row in rows {
        write!(
            out,
            "{},{},{},{}",
            row.n_total,
            row.method,
            format_sig(row.mean_percent_error, 10),
            row.iterations_used
        )?;
        if with_median {
            write!(
                out,
                ",{}",
                format_sig(row.median_percent_error.unwrap_or(f64::NAN), 10)
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Write rows to a file; errors carry the path.
pub fn emit_csv(rows: &[ErrorRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidConfig("no rows to write".into()));
    }
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_csv(rows, &mut writer)
        .and_then(|()| writer.flush())
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Parse CSV produced by [`write_csv`] back into rows.
pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ErrorRow>> {
    let bad =
        |line: usize, what: String| Error::InvalidConfig(format!("csv line {}: {what}", line + 1));
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: "<csv input>".into(),
            source,
        })?;
        if idx == 0 {
            if line != CSV_HEADER && line != format!("{CSV_HEADER},median_percent_error") {
                return Err(bad(idx, format!("unexpected header `{line}`")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 && fields.len() != 5 {
            return Err(bad(
                idx,
                format!("expected 4 or 5 fields, got {}", fields.len()),
            ));
        }
        rows.push(ErrorRow {
            n_total: fields[0]
                .parse()
                .map_err(|e| bad(idx, format!("n_total: {e}")))?,
            method: fields[1].parse()?,
            mean_percent_error: fields[2]
                .parse()
                .map_err(|e| bad(idx, format!("mean_percent_error: {e}")))?,
            iterations_used: fields[3]
                .parse()
                .map_err(|e| bad(idx, format!("iterations: {e}")))?,
            median_percent_error: match fields.get(4) {
                Some(s) => Some(s.parse().map_err(|e| bad(idx, format!("median: {e}")))?),
                None => None,
            },
        });
    }
    Ok(rows)
}

/// Deterministic mean percent error of a quotient engine at a given N: the
/// t-dependent tail cancels in the ratio, so the simulated mean must equal
/// `100·|C_m(N−2)/C_analytic(N−2) − 1|` for the three gamma methods.
pub fn closed_form_percent_error(n_total: u32, method: ApproxMethod) -> Result<f64> {
    let quotient_method = match method {
        ApproxMethod::Wendel => QuotientMethod::Wendel,
        ApproxMethod::Stirling => QuotientMethod::Stirling,
        ApproxMethod::Frame => QuotientMethod::Frame,
        ApproxMethod::Bic => {
            return Err(Error::InvalidConfig(
                "the BIC factor has no closed-form error curve".into(),
            ))
        }
    };
    let nu = (n_total - 2) as f64;
    let approx = crate::gamma::quotient(nu, quotient_method)?;
    let analytic = crate::gamma::analytic_c(nu)?;
    percent_error(approx, analytic)
}
