//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes, 1 on a verification
//! failure, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::arith::{
    factorize, residue_sum_closed, residue_sum_direct, residue_sum_via_psi, RationalArg,
};
use crate::error::Error;
use crate::fourier::{
    ci_coefficient, f_series, w1_series, w2_coefficient, w2_series, SeriesConfig,
};
use crate::identity::{
    linear_grid, rational_grid, sweep, uniform_grid, EvalSettings, PathChoice, PsiPath,
    VerificationReport, W1Path,
};
use crate::quad::{laplace_coefficient, w1_quadrature, w2_quadrature, QuadConfig};
use crate::specfun::{
    cosine_integral, digamma, e1_imag_axis, gauss_digamma_cot_form, gauss_digamma_exp_form,
    sine_integral,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Significant digits for machine-readable output.
pub const MACHINE_DIGITS: usize = 17;
/// Significant digits for plain output.
pub const PLAIN_DIGITS: usize = 10;

pub const THREADS_ENV: &str = "W1KIT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "w1kit",
    version,
    about = "Evaluate and cross-check W1, digamma and cosine-integral identities"
)]
pub struct Cli {
    /// Output format (default: plain for eval, csv otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Target truncation error of the cosine series
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub series_tol: f64,

    /// Absolute tolerance of the quadrature path
    #[arg(long, global = true, default_value_t = QuadConfig::DEFAULT_ABS_TOL)]
    pub quad_tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    W1,
    W1Series,
    W2,
    W2Series,
    F,
    FSeries,
    Digamma,
    Ci,
    Si,
    E1,
    GaussCot,
    GaussExp,
    Laplace,
    CiCoefficient,
    W2Coefficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum W1PathArg {
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PsiPathArg {
    Kernel,
    GaussCot,
    GaussExp,
    FourierSeries,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point
    Eval {
        #[arg(value_enum)]
        function: Function,
        /// Argument: a real, or p/q for the Gauss forms; an index for coefficients
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Significant digits in plain mode
        #[arg(long, default_value_t = PLAIN_DIGITS)]
        digits: usize,
    },
    /// Check the digamma identity on the grid x = j/(n+1), j = 1..n
    VerifyIdentity {
        #[arg(long, default_value_t = 99)]
        grid: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value = "quadrature")]
        w1_path: W1PathArg,
        #[arg(long, value_enum, default_value = "kernel")]
        psi_path: PsiPathArg,
    },
    /// Compare the three routes to the reduced-residue sum of W1(r/m)
    ResidueSum {
        /// Inclusive range a..b, or a single m
        #[arg(long, default_value = "2..100")]
        m: String,
        /// Tolerance for pairs involving the W1 series route
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Tolerance between the two digamma-only routes
        #[arg(long, default_value_t = 1e-9)]
        psi_tol: f64,
    },
    /// Compare closed-form and quadrature cosine coefficients of W1
    Coefficients {
        #[arg(long, default_value = "1..20")]
        k: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Residual sweep over an arbitrary grid
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Every reduced r/m with m up to this value
        #[arg(long, conflicts_with_all = ["from", "to", "steps"])]
        rationals: Option<u64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value = "series")]
        w1_path: W1PathArg,
        #[arg(long, value_enum, default_value = "kernel")]
        psi_path: PsiPathArg,
    },
}

/// A usage error: bad arguments, or an argument outside a function's domain.
#[derive(Debug)]
enum CliError {
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn numeric(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against the given sinks and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match pool {
        Some(pool) => pool.install(|| execute(&cli)),
        None => execute(&cli),
    };
    match result {
        Ok(Outcome {
            text,
            passed,
            diagnostic,
        }) => {
            if let Some(line) = diagnostic {
                let _ = writeln!(err, "{line}");
            }
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write report: {e}");
                return EXIT_USAGE;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        usage(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| usage(e.to_string()))
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be positive, got {v}")))
    }
}

fn settings(cli: &Cli) -> Result<EvalSettings, CliError> {
    let series =
        SeriesConfig::leading_order(positive("series-tol", cli.series_tol)?).map_err(numeric)?;
    let quad = QuadConfig::w1_default().with_abs_tol(positive("quad-tol", cli.quad_tol)?);
    Ok(EvalSettings { quad, series })
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Option<(u64, u64)> {
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().ok()?;
            let b = b.trim().parse().ok()?;
            (a <= b).then_some((a, b))
        }
        None => {
            let v = s.trim().parse().ok()?;
            Some((v, v))
        }
    }
}

/// Formats `v` with `digits` significant digits: fixed notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, v)
    }
}

fn json_number(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format_sig(v, MACHINE_DIGITS))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// A rendered table: header, rows of cells, and the summary.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    max_abs: f64,
    n_pass: usize,
    n_fail: usize,
}

enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) => format_sig(*v, digits),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json_number(*v),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl Table {
    fn passed(&self) -> bool {
        self.n_fail == 0
    }

    fn render(&self, format: OutputFormat) -> String {
        let mut s = String::new();
        match format {
            OutputFormat::Csv => {
                s.push_str(&self.header.join(","));
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.text(MACHINE_DIGITS)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
            OutputFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut summary = Map::new();
                summary.insert("max_abs_residual".into(), json_number(self.max_abs));
                summary.insert("n_pass".into(), Value::from(self.n_pass));
                summary.insert("n_fail".into(), Value::from(self.n_fail));
                let mut top = Map::new();
                top.insert("summary".into(), Value::Object(summary));
                top.insert("rows".into(), Value::Array(rows));
                s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
                s.push('\n');
            }
            OutputFormat::Plain => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|c| c.text(PLAIN_DIGITS)).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        cells
                            .iter()
                            .map(|r| r[i].len())
                            .chain([self.header[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: Vec<&str>| -> String {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(t, w)| format!("{t:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                s.push_str(&line(self.header.clone()));
                s.push('\n');
                for row in &cells {
                    s.push_str(&line(row.iter().map(String::as_str).collect()));
                    s.push('\n');
                }
                let _ = writeln!(
                    s,
                    "max_abs_residual = {}, n_pass = {}, n_fail = {}",
                    format_sig(self.max_abs, PLAIN_DIGITS),
                    self.n_pass,
                    self.n_fail
                );
            }
        }
        s
    }

    fn summary_line(&self) -> String {
        format!(
            "# max_abs_residual={} n_pass={} n_fail={}",
            format_sig(self.max_abs, MACHINE_DIGITS),
            self.n_pass,
            self.n_fail
        )
    }
}

struct Outcome {
    text: String,
    passed: bool,
    /// Written to the diagnostic stream.
    diagnostic: Option<String>,
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let table = match &cli.command {
        Command::Eval {
            function,
            x,
            digits,
        } => {
            let format = cli.format.unwrap_or(OutputFormat::Plain);
            let text = eval(cli, *function, x, *digits, format)?;
            return Ok(Outcome {
                text,
                passed: true,
                diagnostic: None,
            });
        }
        Command::VerifyIdentity {
            grid,
            tol,
            w1_path,
            psi_path,
        } => {
            let tol = positive("tol", *tol)?;
            if *grid == 0 {
                return Err(usage("--grid must be at least 1"));
            }
            let paths = path_choice(*w1_path, *psi_path);
            report_table(&sweep(&uniform_grid(*grid), paths, tol, &settings(cli)?))
        }
        Command::Sweep {
            from,
            to,
            steps,
            rationals,
            tol,
            w1_path,
            psi_path,
        } => {
            let tol = positive("tol", *tol)?;
            let grid = match (rationals, from, to) {
                (Some(m), _, _) => {
                    if *m < 2 {
                        return Err(usage("--rationals must be at least 2"));
                    }
                    rational_grid(*m)
                }
                (None, Some(a), Some(b)) => {
                    linear_grid(*a, *b, steps.unwrap_or(11)).map_err(numeric)?
                }
                _ => {
                    return Err(usage(
                        "sweep needs --rationals M or --from A --to B [--steps N]",
                    ))
                }
            };
            let paths = path_choice(*w1_path, *psi_path);
            report_table(&sweep(&grid, paths, tol, &settings(cli)?))
        }
        Command::ResidueSum { m, tol, psi_tol } => {
            let tol = positive("tol", *tol)?;
            let psi_tol = positive("psi-tol", *psi_tol)?;
            let (lo, hi) =
                parse_range(m).ok_or_else(|| usage(format!("bad range {m:?}; expected a..b")))?;
            if lo < 2 {
                return Err(usage("--m must start at 2 or above"));
            }
            residue_table(lo, hi, tol, psi_tol, &settings(cli)?.series)?
        }
        Command::Coefficients { k, tol } => {
            let tol = positive("tol", *tol)?;
            let (lo, hi) =
                parse_range(k).ok_or_else(|| usage(format!("bad range {k:?}; expected a..b")))?;
            if lo < 1 || hi > u64::from(u32::MAX) {
                return Err(usage("--k must lie in 1..4294967295"));
            }
            coefficient_table(lo as u32, hi as u32, tol, cli.quad_tol)?
        }
    };
    let format = cli.format.unwrap_or(OutputFormat::Csv);
    Ok(Outcome {
        text: table.render(format),
        passed: table.passed(),
        diagnostic: (format == OutputFormat::Csv).then(|| table.summary_line()),
    })
}

fn path_choice(w1: W1PathArg, psi: PsiPathArg) -> PathChoice {
    PathChoice::new(
        match w1 {
            W1PathArg::Quadrature => W1Path::Quadrature,
            W1PathArg::Series => W1Path::Series,
        },
        match psi {
            PsiPathArg::Kernel => PsiPath::Kernel,
            PsiPathArg::GaussCot => PsiPath::GaussCot,
            PsiPathArg::GaussExp => PsiPath::GaussExp,
            PsiPathArg::FourierSeries => PsiPath::FourierSeries,
        },
    )
}

fn report_table(report: &VerificationReport) -> Table {
    let rows = report
        .rows
        .iter()
        .map(|row| {
            let (w1, a, b) = row
                .terms
                .map_or((f64::NAN, f64::NAN, f64::NAN), |t| (t.w1, t.psi_a, t.psi_b));
            let pass = if row.judged {
                Cell::Bool(row.pass)
            } else {
                Cell::Text("na".into())
            };
            vec![
                Cell::Num(row.point.value()),
                Cell::Num(w1),
                Cell::Num(a),
                Cell::Num(b),
                Cell::Num(row.residual),
                Cell::Num(row.tol),
                pass,
            ]
        })
        .collect();
    Table {
        header: vec!["x", "w1", "psi_a", "psi_b", "residual", "tol", "pass"],
        rows,
        max_abs: report.max_abs_residual(),
        n_pass: report.n_pass(),
        n_fail: report.n_fail(),
    }
}

fn residue_table(
    lo: u64,
    hi: u64,
    tol: f64,
    psi_tol: f64,
    series: &SeriesConfig,
) -> Result<Table, CliError> {
    use rayon::prelude::*;
    let rows: Vec<(u64, u64, f64, f64, f64, f64, bool)> = (lo..=hi)
        .into_par_iter()
        .map(|m| {
            let f = factorize(m)?;
            let closed = residue_sum_closed(&f)?;
            let direct = residue_sum_direct(&f, series)?;
            let via = residue_sum_via_psi(&f)?;
            let psi_delta = (closed - via).abs();
            let max_delta = psi_delta
                .max((closed - direct).abs())
                .max((via - direct).abs());
            let pass = psi_delta <= psi_tol && max_delta <= tol;
            Ok((m, f.totient(), closed, direct, via, max_delta, pass))
        })
        .collect::<Result<_, Error>>()
        .map_err(numeric)?;
    let n_pass = rows.iter().filter(|r| r.6).count();
    Ok(Table {
        header: vec![
            "m",
            "phi_m",
            "closed",
            "direct",
            "via_psi",
            "max_delta",
            "tol",
            "pass",
        ],
        max_abs: rows.iter().map(|r| r.5).fold(0.0, f64::max),
        n_fail: rows.len() - n_pass,
        n_pass,
        rows: rows
            .into_iter()
            .map(|(m, phi, c, d, v, delta, pass)| {
                vec![
                    Cell::Int(m),
                    Cell::Int(phi),
                    Cell::Num(c),
                    Cell::Num(d),
                    Cell::Num(v),
                    Cell::Num(delta),
                    Cell::Num(tol),
                    Cell::Bool(pass),
                ]
            })
            .collect(),
    })
}

fn coefficient_table(lo: u32, hi: u32, tol: f64, quad_tol: f64) -> Result<Table, CliError> {
    let cfg = QuadConfig::w1_default().with_abs_tol(positive("quad-tol", quad_tol)?);
    let mut rows = Vec::new();
    let (mut n_pass, mut max_abs) = (0, 0.0f64);
    for k in lo..=hi {
        let closed = ci_coefficient(k as usize).map_err(numeric)?;
        let quad = laplace_coefficient(k, &cfg).map_err(numeric)?;
        let w2 = w2_coefficient(k as usize).map_err(numeric)?;
        let delta = (closed - quad).abs();
        let pass = delta <= tol;
        n_pass += usize::from(pass);
        max_abs = max_abs.max(delta);
        rows.push(vec![
            Cell::Int(u64::from(k)),
            Cell::Num(closed),
            Cell::Num(quad),
            Cell::Num(delta),
            Cell::Num(w2),
            Cell::Num(tol),
            Cell::Bool(pass),
        ]);
    }
    Ok(Table {
        header: vec![
            "k",
            "ci_coefficient",
            "laplace",
            "delta",
            "w2_coefficient",
            "tol",
            "pass",
        ],
        n_fail: rows.len() - n_pass,
        rows,
        max_abs,
        n_pass,
    })
}

fn parse_real(s: &str) -> Result<f64, CliError> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad number {s:?}")))?;
        let q: f64 = q
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad number {s:?}")))?;
        return Ok(p / q);
    }
    s.trim()
        .parse()
        .map_err(|_| usage(format!("bad number {s:?}")))
}

fn parse_fraction(s: &str) -> Result<RationalArg, CliError> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| usage(format!("expected a fraction r/m, got {s:?}")))?;
    let p: u64 = p
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad fraction {s:?}")))?;
    let q: u64 = q
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad fraction {s:?}")))?;
    RationalArg::new(p, q).map_err(numeric)
}

fn parse_index(s: &str) -> Result<u32, CliError> {
    s.trim()
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| usage(format!("expected a positive index, got {s:?}")))
}

fn eval(
    cli: &Cli,
    function: Function,
    x: &str,
    digits: usize,
    format: OutputFormat,
) -> Result<String, CliError> {
    let st = settings(cli)?;
    let w2_quad = QuadConfig::w2_default().with_abs_tol(st.quad.abs_tol);
    let values: Vec<f64> = match function {
        Function::W1 => vec![w1_quadrature(parse_real(x)?, &st.quad).map_err(numeric)?],
        Function::W1Series => vec![w1_series(parse_real(x)?, &st.series).map_err(numeric)?],
        Function::W2 => vec![w2_quadrature(parse_real(x)?, &w2_quad).map_err(numeric)?],
        Function::W2Series => vec![w2_series(parse_real(x)?, &st.series).map_err(numeric)?],
        Function::F => {
            let x = parse_real(x)?;
            vec![digamma(0.5 + x).map_err(numeric)? + digamma(1.5 - x).map_err(numeric)?]
        }
        Function::FSeries => vec![f_series(parse_real(x)?, &st.series).map_err(numeric)?],
        Function::Digamma => vec![digamma(parse_real(x)?).map_err(numeric)?],
        Function::Ci => vec![cosine_integral(parse_real(x)?).map_err(numeric)?],
        Function::Si => vec![sine_integral(parse_real(x)?).map_err(numeric)?],
        Function::E1 => {
            let v = e1_imag_axis(parse_real(x)?).map_err(numeric)?;
            vec![v.re, v.im]
        }
        Function::GaussCot => vec![gauss_digamma_cot_form(parse_fraction(x)?).map_err(numeric)?],
        Function::GaussExp => vec![gauss_digamma_exp_form(parse_fraction(x)?).map_err(numeric)?],
        Function::Laplace => vec![laplace_coefficient(parse_index(x)?, &st.quad).map_err(numeric)?],
        Function::CiCoefficient => vec![ci_coefficient(parse_index(x)? as usize).map_err(numeric)?],
        Function::W2Coefficient => vec![w2_coefficient(parse_index(x)? as usize).map_err(numeric)?],
    };
    let name = function
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(match format {
        OutputFormat::Plain => {
            let parts: Vec<String> = values.iter().map(|&v| format_sig(v, digits)).collect();
            format!("{}\n", parts.join(" "))
        }
        OutputFormat::Csv => {
            let header = if values.len() == 2 {
                "function,x,re,im"
            } else {
                "function,x,value"
            };
            let parts: Vec<String> = values
                .iter()
                .map(|&v| format_sig(v, MACHINE_DIGITS))
                .collect();
            format!("{header}\n{name},{x},{}\n", parts.join(","))
        }
        OutputFormat::Json => {
            let mut obj = Map::new();
            obj.insert("function".into(), Value::String(name));
            obj.insert("x".into(), Value::String(x.to_string()));
            if values.len() == 2 {
                obj.insert("re".into(), json_number(values[0]));
                obj.insert("im".into(), json_number(values[1]));
            } else {
                obj.insert("value".into(), json_number(values[0]));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
            s.push('\n');
            s
        }
    })
}
