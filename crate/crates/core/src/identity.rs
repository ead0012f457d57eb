//! The residual 2W₁(x) + ln 4 + ψ(½+x) + ψ(3/2−x) along selectable
//! evaluation paths, and grid sweeps that collect it into reports.

use rayon::prelude::*;

use crate::arith::RationalArg;
use crate::error::{domain, Error, Result};
use crate::fourier::{f_series, w1_series, SeriesConfig};
use crate::quad::{w1_quadrature, QuadConfig};
use crate::specfun::{digamma, digamma_rational, GaussForm, LN_4};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum W1Path {
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiPath {
    Kernel,
    GaussCot,
    GaussExp,
    /// The pair ψ(½+x) + ψ(3/2−x) from its cosine series, as one value.
    FourierSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathChoice {
    pub w1_path: W1Path,
    pub psi_path: PsiPath,
}

impl PathChoice {
    pub const fn new(w1_path: W1Path, psi_path: PsiPath) -> Self {
        PathChoice { w1_path, psi_path }
    }

    pub fn all() -> Vec<PathChoice> {
        let mut out = Vec::new();
        for w1_path in [W1Path::Quadrature, W1Path::Series] {
            for psi_path in [
                PsiPath::Kernel,
                PsiPath::GaussCot,
                PsiPath::GaussExp,
                PsiPath::FourierSeries,
            ] {
                out.push(PathChoice { w1_path, psi_path });
            }
        }
        out
    }

    pub fn label(&self) -> String {
        let w1 = match self.w1_path {
            W1Path::Quadrature => "quadrature",
            W1Path::Series => "series",
        };
        let psi = match self.psi_path {
            PsiPath::Kernel => "kernel",
            PsiPath::GaussCot => "gauss-cot",
            PsiPath::GaussExp => "gauss-exp",
            PsiPath::FourierSeries => "fourier-series",
        };
        format!("{w1}+{psi}")
    }
}

/// A sweep point: a plain real, or an exact fraction (needed by the Gauss paths).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPoint {
    Real(f64),
    Rational(RationalArg),
}

impl GridPoint {
    pub fn value(&self) -> f64 {
        match self {
            GridPoint::Real(x) => *x,
            GridPoint::Rational(q) => q.value(),
        }
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridPoint::Real(x) => write!(f, "{x}"),
            GridPoint::Rational(q) => write!(f, "{q}"),
        }
    }
}

/// Configuration of the numeric paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalSettings {
    pub quad: QuadConfig,
    pub series: SeriesConfig,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            quad: QuadConfig::w1_default(),
            series: SeriesConfig::leading_order(1e-10).expect("positive tolerance"),
        }
    }
}

/// The four terms of the identity. On the Fourier ψ path `psi_a` holds the
/// whole pair and `psi_b` is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityTerms {
    pub w1: f64,
    pub ln4: f64,
    pub psi_a: f64,
    pub psi_b: f64,
}

impl IdentityTerms {
    pub fn residual(&self) -> f64 {
        2.0 * self.w1 + self.ln4 + self.psi_a + self.psi_b
    }
}

/// True on [0, 1], where the identity holds. Outside it the periodic W₁
/// and the non-periodic ψ pair part ways.
pub fn in_identity_domain(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

pub fn identity_terms(
    point: GridPoint,
    paths: PathChoice,
    settings: &EvalSettings,
) -> Result<IdentityTerms> {
    let x = point.value();
    let w1 = match paths.w1_path {
        W1Path::Quadrature => w1_quadrature(x, &settings.quad)?,
        W1Path::Series => w1_series(x, &settings.series)?,
    };
    let (psi_a, psi_b) = match paths.psi_path {
        PsiPath::Kernel => (digamma(0.5 + x)?, digamma(1.5 - x)?),
        PsiPath::GaussCot | PsiPath::GaussExp => {
            let GridPoint::Rational(q) = point else {
                return Err(domain(format!(
                    "Gauss paths need a rational point, got {x}"
                )));
            };
            let form = if paths.psi_path == PsiPath::GaussCot {
                GaussForm::Cot
            } else {
                GaussForm::Exp
            };
            let (r, m) = (q.r(), q.m());
            // ½ + r/m = (m + 2r)/2m, 3/2 − r/m = (3m − 2r)/2m
            (
                digamma_rational(m + 2 * r, 2 * m, form)?,
                digamma_rational(3 * m - 2 * r, 2 * m, form)?,
            )
        }
        PsiPath::FourierSeries => (f_series(x, &settings.series)?, 0.0),
    };
    Ok(IdentityTerms {
        w1,
        ln4: LN_4,
        psi_a,
        psi_b,
    })
}

/// 2W₁(x) + ln 4 + ψ(½+x) + ψ(3/2−x) with default settings.
///
/// The Gauss paths need an exact fraction; use [`identity_residual_at`].
pub fn identity_residual(x: f64, paths: PathChoice) -> Result<f64> {
    identity_residual_at(GridPoint::Real(x), paths, &EvalSettings::default())
}

pub fn identity_residual_at(
    point: GridPoint,
    paths: PathChoice,
    settings: &EvalSettings,
) -> Result<f64> {
    identity_terms(point, paths, settings).map(|t| t.residual())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub point: GridPoint,
    pub terms: Option<IdentityTerms>,
    /// NaN when the row failed to evaluate.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Rows outside the identity's domain are recorded without a verdict.
    pub judged: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub paths: PathChoice,
    pub rows: Vec<ReportRow>,
}

impl VerificationReport {
    fn judged(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.judged)
    }

    /// Max |residual| over judged rows that evaluated.
    pub fn max_abs_residual(&self) -> f64 {
        self.judged()
            .filter(|r| r.error.is_none())
            .map(|r| r.residual.abs())
            .fold(0.0, f64::max)
    }

    pub fn mean_abs_residual(&self) -> f64 {
        let vals: Vec<f64> = self
            .judged()
            .filter(|r| r.error.is_none())
            .map(|r| r.residual.abs())
            .collect();
        if vals.is_empty() {
            0.0
        } else {
            vals.iter().sum::<f64>() / vals.len() as f64
        }
    }

    pub fn n_pass(&self) -> usize {
        self.judged().filter(|r| r.pass).count()
    }

    pub fn n_fail(&self) -> usize {
        self.judged().filter(|r| !r.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.n_fail() == 0
    }
}

fn evaluate_row(
    point: GridPoint,
    paths: PathChoice,
    tol: f64,
    settings: &EvalSettings,
) -> ReportRow {
    let judged = in_identity_domain(point.value());
    match identity_terms(point, paths, settings) {
        Ok(terms) => {
            let residual = terms.residual();
            ReportRow {
                point,
                terms: Some(terms),
                residual,
                tol,
                pass: residual.abs() <= tol,
                judged,
                error: None,
            }
        }
        Err(e) => ReportRow {
            point,
            terms: None,
            residual: f64::NAN,
            tol,
            pass: false,
            judged,
            error: Some(e.to_string()),
        },
    }
}

/// One row per grid point, in grid order. Rows are evaluated in parallel
/// on the current rayon pool; a failing row never aborts the sweep.
pub fn sweep(
    grid: &[GridPoint],
    paths: PathChoice,
    tol: f64,
    settings: &EvalSettings,
) -> VerificationReport {
    let rows = grid
        .par_iter()
        .map(|&p| evaluate_row(p, paths, tol, settings))
        .collect();
    VerificationReport { paths, rows }
}

/// x = j/(n+1) for j = 1..=n, as reduced fractions.
pub fn uniform_grid(n: u64) -> Vec<GridPoint> {
    (1..=n)
        .map(|j| GridPoint::Rational(RationalArg::reduced(j, n + 1).expect("0 < j < n+1")))
        .collect()
}

/// Every reduced r/m with 2 ≤ m ≤ max_m, ordered by m then r.
pub fn rational_grid(max_m: u64) -> Vec<GridPoint> {
    (2..=max_m)
        .flat_map(|m| crate::arith::reduced_residues(m).map(move |r| (r, m)))
        .map(|(r, m)| GridPoint::Rational(RationalArg::new(r, m).expect("reduced")))
        .collect()
}

/// `steps` evenly spaced reals from `from` to `to` inclusive.
pub fn linear_grid(from: f64, to: f64, steps: usize) -> Result<Vec<GridPoint>> {
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(Error::Config(format!(
            "bad linear grid {from}..{to} with {steps} steps"
        )));
    }
    if steps == 1 {
        return Ok(vec![GridPoint::Real(from)]);
    }
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| GridPoint::Real(from + h * i as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{ci_coefficient, f_coefficient};

    const KERNEL_QUAD: PathChoice = PathChoice::new(W1Path::Quadrature, PsiPath::Kernel);

    #[test]
    fn residual_at_half() {
        assert!(identity_residual(0.5, KERNEL_QUAD).unwrap().abs() < 1e-9);
    }

    #[test]
    fn residual_at_third_on_every_path() {
        let third = GridPoint::Rational(RationalArg::new(1, 3).unwrap());
        let settings = EvalSettings::default();
        let mut residuals = Vec::new();
        for paths in PathChoice::all() {
            let r = identity_residual_at(third, paths, &settings).unwrap();
            assert!(r.abs() < 1e-9, "{}: {r:e}", paths.label());
            residuals.push(r);
        }
        for a in &residuals {
            for b in &residuals {
                assert!((a - b).abs() < 2e-9);
            }
        }
    }

    #[test]
    fn gauss_path_rejects_real_points() {
        let paths = PathChoice::new(W1Path::Series, PsiPath::GaussCot);
        assert!(matches!(
            identity_residual(0.3, paths),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn w1_term_is_periodic() {
        let settings = EvalSettings::default();
        let paths = PathChoice::new(W1Path::Series, PsiPath::Kernel);
        let a = identity_terms(GridPoint::Real(0.2), paths, &settings).unwrap();
        let b = identity_terms(GridPoint::Real(1.2), paths, &settings).unwrap();
        assert!((a.w1 - b.w1).abs() < 1e-12);
        // The ψ pair is not periodic, so the full residual differs.
        assert!((a.residual() - b.residual()).abs() > 1e-3);
    }

    #[test]
    fn residual_vanishes_across_the_domain() {
        let settings = EvalSettings::default();
        let paths = PathChoice::new(W1Path::Series, PsiPath::Kernel);
        for x in [0.0, 0.01, 0.7, 0.99, 1.0] {
            let r = identity_residual_at(GridPoint::Real(x), paths, &settings).unwrap();
            assert!(r.abs() < 1e-8, "x = {x}: {r:e}");
        }
        // Outside [0, 1] the periodic W₁ no longer tracks the ψ pair,
        // even where both ψ arguments stay positive.
        for x in [-0.2, 1.3, 1.7] {
            let r = identity_residual_at(GridPoint::Real(x), paths, &settings).unwrap();
            assert!(r.abs() > 1e-3, "x = {x}: {r:e}");
        }
    }

    #[test]
    fn coefficientwise_cancellation() {
        for k in 1..=20 {
            let two_a = 2.0 * ci_coefficient(k).unwrap();
            assert!((two_a + f_coefficient(k).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn sweep_grid_of_percentiles() {
        let grid = uniform_grid(99);
        assert_eq!(grid.len(), 99);
        let report = sweep(
            &grid,
            PathChoice::new(W1Path::Series, PsiPath::Kernel),
            1e-8,
            &EvalSettings::default(),
        );
        assert_eq!(report.n_pass(), 99);
        assert!(report.max_abs_residual() < 1e-8);
        for (row, point) in report.rows.iter().zip(&grid) {
            assert_eq!(row.point, *point);
            assert_eq!(row.pass, row.residual.abs() <= row.tol);
        }
    }

    #[test]
    fn sweep_rationals_on_gauss_exp() {
        let grid = rational_grid(30);
        let report = sweep(
            &grid,
            PathChoice::new(W1Path::Series, PsiPath::GaussExp),
            1e-9,
            &EvalSettings::default(),
        );
        assert!(report.all_pass(), "max {:e}", report.max_abs_residual());
        assert_eq!(report.n_pass(), grid.len());
    }

    #[test]
    fn sweep_edge_cases() {
        let empty = sweep(&[], KERNEL_QUAD, 1e-8, &EvalSettings::default());
        assert!(empty.rows.is_empty());
        assert_eq!((empty.n_pass(), empty.n_fail()), (0, 0));

        let grid = vec![
            GridPoint::Real(0.25),
            GridPoint::Real(-0.5),
            GridPoint::Real(2.2),
        ];
        let report = sweep(&grid, KERNEL_QUAD, 1e-8, &EvalSettings::default());
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows[0].pass && report.rows[0].judged);
        // ψ(0) is a pole: recorded, not fatal
        assert!(report.rows[1].error.is_some());
        assert!(!report.rows[2].judged);
        assert_eq!(report.n_pass() + report.n_fail(), 1);
    }

    #[test]
    fn failing_row_with_tight_tolerance() {
        let report = sweep(
            &uniform_grid(3),
            KERNEL_QUAD,
            1e-30,
            &EvalSettings::default(),
        );
        assert!(report.n_fail() > 0);
    }

    #[test]
    fn linear_grid_endpoints() {
        let g = linear_grid(0.0, 1.0, 5).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4].value(), 1.0);
        assert!(linear_grid(0.0, 1.0, 0).is_err());
    }
}
