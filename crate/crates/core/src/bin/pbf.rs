//! Command-line front end: one-shot Bayes-factor computation from summary
//! statistics, and the error-study grid runner.
//!
//! Exit codes: 0 success, 2 usage, 3 unknown method, 4 bic without --n,
//! 5 --alpha with a non-analytic method, 6 domain error, 7 I/O error,
//! 8 invalid simulation range.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pbf_core::bayes::{
    bic_bf01, pbf10, pbf10_general, percent_error, tail_factor, Alpha, BayesFactor, SummaryStats,
};
use pbf_core::gamma::{quotient, QuotientMethod};
use pbf_core::sim::{run_grid, write_csv, ApproxMethod, ErrorRow, SimConfig};

#[derive(Parser)]
#[command(
    name = "pbf",
    version,
    about = "Pearson Bayes factors for two-sample designs from summary statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Bayes factors from an observed t statistic and degrees of freedom
    Compute(ComputeArgs),
    /// Run the approximation-error study over a grid of total sample sizes
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Observed t statistic
    #[arg(long, allow_negative_numbers = true)]
    t: f64,

    /// Degrees of freedom (N − 2 in the two-sample design)
    #[arg(long, allow_negative_numbers = true)]
    df: f64,

    /// One of: analytic, wendel, stirling, frame, bic, all
    #[arg(long)]
    method: String,

    /// Pearson prior scale (analytic method only; default -1/2)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    /// Total sample size N (required for bic)
    #[arg(long)]
    n: Option<u64>,

    /// Which factor leads the report: 10 (H1 over H0, default) or 01
    #[arg(long, default_value = "10")]
    direction: String,

    /// Decimal places in the report
    #[arg(long, default_value_t = 4)]
    digits: usize,
}

#[derive(Args)]
struct SimulateArgs {
    /// Smallest total sample size
    #[arg(long = "n-min", default_value_t = 4)]
    n_min: u32,

    /// Largest total sample size
    #[arg(long = "n-max", default_value_t = 100)]
    n_max: u32,

    /// Iterations per sample size
    #[arg(long, default_value_t = 1000)]
    iters: u32,

    /// Master seed; the run is fully deterministic given the seed
    #[arg(long)]
    seed: u64,

    /// Output CSV path, or '-' for standard output
    #[arg(long, default_value = "-")]
    out: String,

    /// Comma-separated subset of wendel,stirling,frame,bic
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "wendel,stirling,frame,bic"
    )]
    methods: Vec<String>,

    /// Worker threads for the grid (any count yields identical output)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

enum CliError {
    Usage(String),
    UnknownMethod(String),
    BicNeedsN,
    AlphaNeedsAnalytic(String),
    Compute(pbf_core::Error),
    Io(String),
    BadRange(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::UnknownMethod(_) => 3,
            CliError::BicNeedsN => 4,
            CliError::AlphaNeedsAnalytic(_) => 5,
            CliError::Compute(_) => 6,
            CliError::Io(_) => 7,
            CliError::BadRange(_) => 8,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::UnknownMethod(m) => write!(
                f,
                "unknown method `{m}` (expected analytic, wendel, stirling, frame, bic or all)"
            ),
            CliError::BicNeedsN => write!(f, "--method bic requires --n (total sample size)"),
            CliError::AlphaNeedsAnalytic(m) => {
                write!(f, "--alpha applies only to --method analytic, not `{m}`")
            }
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::BadRange(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<pbf_core::Error> for CliError {
    fn from(e: pbf_core::Error) -> Self {
        CliError::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Simulate(args) => cmd_simulate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

enum Method {
    Quotient(QuotientMethod),
    Bic,
    All,
}

fn parse_method(name: &str) -> Result<Method, CliError> {
    match name {
        "analytic" => Ok(Method::Quotient(QuotientMethod::Analytic)),
        "wendel" => Ok(Method::Quotient(QuotientMethod::Wendel)),
        "stirling" => Ok(Method::Quotient(QuotientMethod::Stirling)),
        "frame" => Ok(Method::Quotient(QuotientMethod::Frame)),
        "bic" => Ok(Method::Bic),
        "all" => Ok(Method::All),
        other => Err(CliError::UnknownMethod(other.to_string())),
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), CliError> {
    let method = parse_method(&args.method)?;
    if args.alpha.is_some() && !matches!(method, Method::Quotient(QuotientMethod::Analytic)) {
        return Err(CliError::AlphaNeedsAnalytic(args.method.clone()));
    }
    let lead_h1 = match args.direction.as_str() {
        "10" => true,
        "01" => false,
        other => {
            return Err(CliError::Usage(format!(
                "--direction must be 10 or 01, got `{other}`"
            )))
        }
    };
    let stats = match args.n {
        Some(n) => SummaryStats::with_n_total(args.t, args.df, n)?,
        None => SummaryStats::new(args.t, args.df)?,
    };
    let d = args.digits;

    println!("t           : {:.d$}", args.t);
    println!("df          : {:.d$}", args.df);
    match method {
        Method::Quotient(qm) => {
            println!("method      : {qm}");
            if let Some(alpha) = args.alpha {
                let bf = pbf10_general(&stats, Alpha::new(alpha)?)?;
                println!("alpha       : {alpha:.d$}");
                print_factor_lines(bf, lead_h1, d);
            } else {
                println!("C_nu        : {:.d$}", quotient(args.df, qm)?);
                println!("tail factor : {:.d$}", tail_factor(&stats));
                print_factor_lines(pbf10(&stats, qm)?, lead_h1, d);
            }
        }
        Method::Bic => {
            let Some(n) = args.n else {
                return Err(CliError::BicNeedsN);
            };
            println!("method      : bic");
            println!("n           : {n}");
            print_factor_lines(bic_bf01(&stats)?.as_h1_over_h0(), lead_h1, d);
        }
        Method::All => print_comparison_table(&stats, args, lead_h1)?,
    }
    Ok(())
}

fn print_factor_lines(bf: BayesFactor, lead_h1: bool, d: usize) {
    let bf10 = bf.as_h1_over_h0();
    let bf01 = bf10.flip();
    if lead_h1 {
        println!("BF_10       : {:.d$}", bf10.value());
        println!("BF_01       : {:.d$}", bf01.value());
        println!("log BF_10   : {:.d$}", bf10.log_value());
    } else {
        println!("BF_01       : {:.d$}", bf01.value());
        println!("BF_10       : {:.d$}", bf10.value());
        println!("log BF_01   : {:.d$}", bf01.log_value());
    }
}

fn print_comparison_table(
    stats: &SummaryStats,
    args: &ComputeArgs,
    lead_h1: bool,
) -> Result<(), CliError> {
    let d = args.digits;
    println!("tail factor : {:.d$}", tail_factor(stats));
    println!();
    let (first, second) = if lead_h1 {
        ("BF_10", "BF_01")
    } else {
        ("BF_01", "BF_10")
    };
    println!(
        "{:<10} {:>12} {:>12} {:>12} {:>14}",
        "method", "C_nu", first, second, "pct_err"
    );

    let reference = pbf10(stats, QuotientMethod::Analytic)?.value();
    for qm in QuotientMethod::ALL {
        let c = quotient(stats.nu(), qm)?;
        let bf10 = pbf10(stats, qm)?;
        print_table_row(qm.name(), Some(c), bf10, reference, lead_h1, d)?;
    }
    if args.n.is_some() {
        let bf10 = bic_bf01(stats)?.as_h1_over_h0();
        print_table_row("bic", None, bf10, reference, lead_h1, d)?;
    } else {
        eprintln!("note: pass --n to include the bic row");
    }
    Ok(())
}

fn print_table_row(
    name: &str,
    c: Option<f64>,
    bf10: BayesFactor,
    reference: f64,
    lead_h1: bool,
    d: usize,
) -> Result<(), CliError> {
    let err = percent_error(bf10.value(), reference)?;
    let c_text = match c {
        Some(c) => format!("{c:.d$}"),
        None => "-".to_string(),
    };
    let (a, b) = if lead_h1 {
        (bf10.value(), bf10.flip().value())
    } else {
        (bf10.flip().value(), bf10.value())
    };
    println!("{name:<10} {c_text:>12} {a:>12.d$} {b:>12.d$} {err:>14.d$}");
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let mut config = SimConfig::new(args.seed);
    config.n_min = args.n_min;
    config.n_max = args.n_max;
    config.iterations = args.iters;
    config.methods = args
        .methods
        .iter()
        .map(|name| {
            name.parse::<ApproxMethod>()
                .map_err(|_| CliError::UnknownMethod(name.clone()))
        })
        .collect::<Result<BTreeSet<_>, _>>()?;

    if args.threads == 0 {
        return Err(CliError::BadRange("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::BadRange(format!("cannot build thread pool: {e}")))?;
    let run = pool.install(|| run_grid(&config)).map_err(|e| match e {
        pbf_core::Error::InvalidConfig(msg) => CliError::BadRange(msg),
        other => CliError::Compute(other),
    })?;

    let csv_to_stdout = args.out == "-";
    if csv_to_stdout {
        let stdout = std::io::stdout();
        write_csv(&run.rows, stdout.lock()).map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    } else {
        let path = PathBuf::from(&args.out);
        pbf_core::sim::emit_csv(&run.rows, &path).map_err(|e| CliError::Io(e.to_string()))?;
    }

    // The summary is data when the CSV went to a file; otherwise keep stdout
    // clean for the CSV and report on stderr.
    let mut summary: Box<dyn Write> = if csv_to_stdout {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    if !csv_to_stdout {
        writeln!(summary, "wrote {} rows to {}", run.rows.len(), args.out).ok();
    }
    if run.redraws > 0 {
        eprintln!("note: {} degenerate draws were redrawn", run.redraws);
    }
    writeln!(
        summary,
        "{:<10} {:>18} {:>18}",
        "method", "first N < 1%", "first N < 0.01%"
    )
    .ok();
    let methods: Vec<ApproxMethod> = config.methods.iter().copied().collect();
    for method in methods {
        let first = |threshold: f64| -> String {
            first_n_below(&run.rows, method, threshold)
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".to_string())
        };
        writeln!(
            summary,
            "{:<10} {:>18} {:>18}",
            method.name(),
            first(1.0),
            first(0.01)
        )
        .ok();
    }
    Ok(())
}

fn first_n_below(rows: &[ErrorRow], method: ApproxMethod, threshold: f64) -> Option<u32> {
    rows.iter()
        .filter(|r| r.method == method && r.mean_percent_error < threshold)
        .map(|r| r.n_total)
        .next()
}
