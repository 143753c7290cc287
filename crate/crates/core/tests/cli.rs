//! End-to-end tests of the `pbf` binary: flag surface, exit codes, the
//! stdout/stderr split, and the CSV contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pbf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Value after the colon on the line starting with `label`.
fn field(text: &str, label: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(label))
        .unwrap_or_else(|| panic!("no `{label}` line in:\n{text}"));
    line.split(':').nth(1).unwrap().trim().parse().unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("pbf-cli-{}-{name}", std::process::id()))
}

#[test]
fn compute_wendel_worked_example() {
    let out = pbf(&["compute", "--t", "2.0", "--df", "71", "--method", "wendel"]);
    assert!(out.status.success());
    assert!(stderr(&out).is_empty(), "diagnostics leaked to stderr");
    let text = stdout(&out);
    assert!((field(&text, "C_nu") - 0.1678).abs() < 1e-4);
    assert!((field(&text, "tail factor") - 3.8417).abs() < 1e-4);
    assert!((field(&text, "BF_10") - 0.6446).abs() < 5e-4);
    assert!((field(&text, "BF_01") - 1.551).abs() < 5e-4);
    assert!((field(&text, "log BF_10") - (-0.4390)).abs() < 5e-4);
}

#[test]
fn compute_bic_worked_example() {
    let out = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "bic", "--n", "73",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!((field(&text, "BF_01") - 1.1557).abs() < 5e-4);
    assert!((field(&text, "BF_10") - 0.8653).abs() < 5e-4);
}

#[test]
fn compute_zero_t() {
    let out = pbf(&["compute", "--t", "0", "--df", "10", "--method", "wendel"]);
    assert!(out.status.success());
    // √(2/10)/√π
    assert!((field(&stdout(&out), "BF_10") - 0.2523).abs() < 1e-4);
}

#[test]
fn compute_negative_t_accepted() {
    let plus = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "analytic",
    ]);
    let minus = pbf(&[
        "compute", "--t", "-2.0", "--df", "71", "--method", "analytic",
    ]);
    assert!(minus.status.success());
    assert_eq!(stdout(&plus).lines().last(), stdout(&minus).lines().last());
}

#[test]
fn compute_direction_flag() {
    let out = pbf(&[
        "compute",
        "--t",
        "2.0",
        "--df",
        "71",
        "--method",
        "wendel",
        "--direction",
        "01",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!((field(&text, "log BF_01") - 0.4390).abs() < 5e-4);
    // BF_01 line comes first when it leads
    let bf01_pos = text.find("BF_01").unwrap();
    let bf10_pos = text.find("BF_10").unwrap();
    assert!(bf01_pos < bf10_pos);
}

#[test]
fn compute_digits_flag() {
    let out = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "analytic", "--digits", "8",
    ]);
    let text = stdout(&out);
    // 8 decimal places on the factor line
    let line = text.lines().find(|l| l.starts_with("BF_10")).unwrap();
    let value = line.split(':').nth(1).unwrap().trim();
    assert_eq!(value.split('.').nth(1).unwrap().len(), 8);
    assert!((value.parse::<f64>().unwrap() - 0.64705628).abs() < 1e-7);
}

#[test]
fn compute_alpha_general_prior() {
    let out = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "analytic", "--alpha", "0", "--digits",
        "6",
    ]);
    assert!(out.status.success());
    assert!((field(&stdout(&out), "BF_10") - 0.988918).abs() < 1e-5);

    // default scale reproduces the plain analytic factor
    let out = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "analytic", "--alpha", "-0.5",
    ]);
    assert!((field(&stdout(&out), "BF_10") - 0.6471).abs() < 1e-4);
}

#[test]
fn compute_all_comparison_table() {
    let out = pbf(&[
        "compute", "--t", "2.0", "--df", "71", "--method", "all", "--n", "73",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = |name: &str| -> Vec<String> {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("no `{name}` row in:\n{text}"))
            .split_whitespace()
            .map(str::to_string)
            .collect()
    };
    // wendel percent error vs analytic is the 0.36% of the worked example
    let wendel = row("wendel");
    let pct: f64 = wendel.last().unwrap().parse().unwrap();
    assert!((pct - 0.36).abs() < 0.01, "wendel pct err {pct}");
    // bic row present with n supplied, error magnitude ~33.7%
    let bic = row("bic");
    let pct: f64 = bic.last().unwrap().parse().unwrap();
    assert!((pct - 33.7).abs() < 0.1, "bic pct err {pct}");
    let analytic = row("analytic");
    let pct: f64 = analytic.last().unwrap().parse().unwrap();
    assert_eq!(pct, 0.0);
}

#[test]
fn compute_all_without_n_skips_bic() {
    let out = pbf(&["compute", "--t", "2.0", "--df", "71", "--method", "all"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("bic"));
    assert!(stderr(&out).contains("--n"));
}

#[test]
fn exit_codes_are_distinct() {
    // unknown method -> 3
    let out = pbf(&["compute", "--t", "1", "--df", "10", "--method", "laplace"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("laplace"));
    assert!(stdout(&out).is_empty());

    // bic without --n -> 4
    let out = pbf(&["compute", "--t", "1", "--df", "10", "--method", "bic"]);
    assert_eq!(out.status.code(), Some(4));

    // alpha with a non-analytic method -> 5
    let out = pbf(&[
        "compute", "--t", "1", "--df", "10", "--method", "wendel", "--alpha", "0",
    ]);
    assert_eq!(out.status.code(), Some(5));

    // domain error (df <= 0) -> 6
    let out = pbf(&["compute", "--t", "1", "--df", "-4", "--method", "analytic"]);
    assert_eq!(out.status.code(), Some(6));

    // invalid simulate range -> 8
    let out = pbf(&["simulate", "--seed", "1", "--n-min", "50", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(8));

    // missing required seed -> clap usage error (2)
    let out = pbf(&["simulate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_single_cell_row_count() {
    let out = pbf(&[
        "simulate", "--n-min", "10", "--n-max", "10", "--iters", "1", "--seed", "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n_total,method,mean_percent_error,iterations");
    assert_eq!(lines.len(), 5, "header + 4 data rows:\n{text}");
    assert!(lines[1].starts_with("10,bic,"));
    assert!(lines[4].starts_with("10,wendel,"));
}

#[test]
fn simulate_csv_file_and_summary() {
    let path = temp_path("grid.csv");
    let out = pbf(&[
        "simulate",
        "--n-min",
        "4",
        "--n-max",
        "30",
        "--iters",
        "50",
        "--seed",
        "11",
        "--out",
        path.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert!(out.status.success());
    let summary = stdout(&out);
    assert!(stderr(&out).is_empty());
    // first crossings visible within this range: wendel < 1% from N=27,
    // frame < 0.01% from N=7
    let row = |name: &str| -> Vec<String> {
        summary
            .lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("no `{name}` row in:\n{summary}"))
            .split_whitespace()
            .map(str::to_string)
            .collect()
    };
    assert_eq!(row("wendel")[1], "27");
    assert_eq!(row("frame")[1], "4");
    assert_eq!(row("frame")[2], "7");
    assert_eq!(row("stirling")[2], "-");

    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 27 * 4);
    std::fs::remove_file(&path).ok();
}

#[test]
fn simulate_deterministic_across_runs_and_threads() {
    let args_base = [
        "simulate", "--n-min", "4", "--n-max", "12", "--iters", "40", "--seed", "2024",
    ];
    let a = pbf(&args_base);
    let b = pbf(&args_base);
    assert_eq!(stdout(&a), stdout(&b));

    let mut threaded: Vec<&str> = args_base.to_vec();
    threaded.extend(["--threads", "4"]);
    let c = pbf(&threaded);
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn simulate_methods_subset() {
    let out = pbf(&[
        "simulate",
        "--n-min",
        "10",
        "--n-max",
        "11",
        "--iters",
        "5",
        "--seed",
        "3",
        "--methods",
        "wendel,frame",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5); // header + 2 N × 2 methods
    assert!(!text.contains("bic"));
    assert!(!text.contains("stirling"));
}

#[test]
fn simulate_unwritable_path() {
    let out = pbf(&[
        "simulate",
        "--n-min",
        "10",
        "--n-max",
        "10",
        "--iters",
        "1",
        "--seed",
        "1",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(7));
    assert!(stderr(&out).contains("/nonexistent-dir/x.csv"));
}

#[test]
fn version_flag() {
    let out = pbf(&["--version"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("pbf "));
}
