use std::f64::consts::LN_2;
use std::process::{Command, Output};

use proptest::prelude::*;
use w1kit::cli::{run_with, EXIT_FAIL, EXIT_OK, EXIT_USAGE, THREADS_ENV};
use w1kit::specfun::EULER_GAMMA;

fn w1kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_w1kit"))
        .args(args)
        .env_remove(THREADS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("w1kit").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .collect()
}

#[test]
fn eval_w1_at_half_prints_the_closed_form() {
    let o = w1kit(&["eval", "w1", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - (EULER_GAMMA - LN_2)).abs() < 1e-9, "{v}");
}

#[test]
fn eval_digits_controls_plain_precision() {
    let (code, out, _) = in_process(&["eval", "digamma", "--x", "1", "--digits", "17"]);
    assert_eq!(code, EXIT_OK);
    let v: f64 = out.trim().parse().unwrap();
    assert_eq!(v, w1kit::specfun::digamma(1.0).unwrap());
}

#[test]
fn verify_identity_defaults_give_99_passing_rows() {
    let o = w1kit(&["verify-identity", "--grid", "99", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let lines = data_lines(&text);
    assert_eq!(lines[0], "x,w1,psi_a,psi_b,residual,tol,pass");
    assert_eq!(lines.len(), 100);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    let diag = String::from_utf8(o.stderr).unwrap();
    assert!(diag.contains("n_pass=99 n_fail=0"), "{diag}");
}

#[test]
fn residue_sum_reports_all_three_paths() {
    let o = w1kit(&["residue-sum", "--m", "2..100", "--tol", "1e-7"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let lines = data_lines(&text);
    assert_eq!(lines[0], "m,phi_m,closed,direct,via_psi,max_delta,tol,pass");
    assert_eq!(lines.len(), 100);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 8);
        let delta: f64 = cols[5].parse().unwrap();
        assert!(delta < 1e-7, "{line}");
    }
}

#[test]
fn csv_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["sweep", "--rationals", "12", "--w1-path", "quadrature"];
    let run = |threads: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_w1kit"));
        cmd.args(args).env_remove(THREADS_ENV);
        if let Some(t) = threads {
            cmd.env(THREADS_ENV, t);
        }
        cmd.output().unwrap()
    };
    let a = run(None);
    let b = run(None);
    let c = run(Some("1"));
    let d = run(Some("5"));
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_w1kit"))
        .args(["coefficients", "--k", "1..3"])
        .env(THREADS_ENV, "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(o.stdout.is_empty());
}

#[test]
fn json_carries_summary_and_rows() {
    let (code, out, _) = in_process(&["--format", "json", "coefficients", "--k", "1..20"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["summary"]["n_pass"], 20);
    assert_eq!(doc["summary"]["n_fail"], 0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[0]["k"], 1);
    let delta = rows[19]["delta"].as_f64().unwrap();
    assert!(delta < 1e-10);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = in_process(&[
        "-o",
        p,
        "verify-identity",
        "--grid",
        "9",
        "--w1-path",
        "series",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_lines(&written).len(), 10);
}

#[test]
fn rows_outside_the_unit_interval_are_not_judged() {
    let (code, out, _) = in_process(&["sweep", "--from", "-0.25", "--to", "1.25", "--steps", "6"]);
    assert_eq!(code, EXIT_OK);
    let lines = data_lines(&out);
    assert!(lines[1].ends_with(",na"));
    assert!(lines.last().unwrap().ends_with(",na"));
    assert!(lines[2..lines.len() - 1]
        .iter()
        .all(|l| l.ends_with(",true")));
}

#[test]
fn failing_checks_exit_one() {
    for args in [
        &["verify-identity", "--grid", "19", "--tol", "1e-30"][..],
        &["residue-sum", "--m", "2..10", "--tol", "1e-30"],
        &["residue-sum", "--m", "2..10", "--psi-tol", "1e-30"],
        &["coefficients", "--k", "1..5", "--tol", "1e-30"],
    ] {
        let (code, _, _) = in_process(args);
        assert_eq!(code, EXIT_FAIL, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["frobnicate"],
        &["eval", "w1"],
        &["eval", "nope", "--x", "0.5"],
        &["eval", "digamma", "--x", "-2"],
        &["residue-sum", "--m", "1..5"],
        &["residue-sum", "--m", "9..3"],
        &["coefficients", "--k", "0..3"],
        &["verify-identity", "--tol", "-1"],
        &["verify-identity", "--grid", "0"],
        &["sweep", "--from", "0.5", "--to", "0.1", "--steps", "0"],
        &["--format", "xml", "coefficients"],
    ] {
        let (code, out, err) = in_process(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty(), "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = w1kit(&["--help"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("verify-identity"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tolerance_decides_the_exit_code(exp in -40i32..=-2) {
        let tol = format!("1e{exp}");
        let (code, out, _) = in_process(&["verify-identity", "--grid", "19", "--w1-path", "series", "--tol", &tol]);
        let residuals: Vec<f64> = data_lines(&out)[1..]
            .iter()
            .map(|l| l.split(',').nth(4).unwrap().parse::<f64>().unwrap().abs())
            .collect();
        let tol: f64 = tol.parse().unwrap();
        let expected = if residuals.iter().all(|&r| r <= tol) { EXIT_OK } else { EXIT_FAIL };
        prop_assert_eq!(code, expected);
        if exp >= -8 {
            prop_assert_eq!(code, EXIT_OK);
        }
        if exp <= -20 {
            prop_assert_eq!(code, EXIT_FAIL);
        }
    }
}
