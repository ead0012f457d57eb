//! Cosine series of W₁, of f(x) = ψ(½+x) + ψ(3/2−x), and of W₂, with
//! closed-form coefficients and an analytic correction for the slowly
//! decaying 1/k² part of the tail.
//!
//! Every coefficient c_k here has the shape
//! c_k = L/(πk)² + O(1/(πk)⁴), and the tail Σ_{k>K} cos(2πkx)/k² is
//! summed exactly with the B₂ Bernoulli polynomial:
//! Σ_{k≥1} cos(2πkx)/k² = π² (t² − t + 1/6), t = x mod 1.

use std::f64::consts::{LN_2, PI};
use std::sync::{OnceLock, RwLock};

use crate::error::{domain, Error, Result};
use crate::specfun::cosine_integral;

const PI2: f64 = PI * PI;
const PI4: f64 = PI2 * PI2;

/// How the remainder beyond `max_terms` is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Plain truncation.
    None,
    /// Sum the 1/k² envelope of the remainder in closed form.
    LeadingOrder,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub max_terms: usize,
    pub tail_mode: TailMode,
    pub target_tol: f64,
}

impl SeriesConfig {
    /// Smallest tail-corrected configuration meeting `target_tol` for
    /// every series in this module.
    pub fn leading_order(target_tol: f64) -> Result<Self> {
        if !(target_tol > 0.0) {
            return Err(Error::Config(format!(
                "target_tol must be positive, got {target_tol}"
            )));
        }
        let worst = Envelope::W2.remainder;
        let k = (worst / (3.0 * PI4 * target_tol)).cbrt().ceil().max(1.0) as usize;
        Ok(SeriesConfig {
            max_terms: k,
            tail_mode: TailMode::LeadingOrder,
            target_tol,
        })
    }

    /// Plain truncation after `max_terms`.
    pub fn truncated(max_terms: usize, target_tol: f64) -> Self {
        SeriesConfig {
            max_terms,
            tail_mode: TailMode::None,
            target_tol,
        }
    }

    fn check(&self, env: &Envelope) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::Config("max_terms must be at least 1".into()));
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::Config(format!(
                "target_tol must be positive, got {}",
                self.target_tol
            )));
        }
        let bound = env.tail_bound(self.max_terms, self.tail_mode);
        if bound > self.target_tol {
            return Err(Error::ToleranceUnreachable {
                target: self.target_tol,
                terms: self.max_terms,
                bound,
            });
        }
        Ok(())
    }
}

/// Asymptotic shape of a coefficient sequence:
/// c_k = lead/(πk)² + r_k with |r_k| ≤ remainder/(πk)⁴,
/// and |c_k| ≤ |lead|/(πk)² + excess/(πk)⁴.
#[derive(Debug, Clone, Copy)]
struct Envelope {
    lead: f64,
    remainder: f64,
    excess: f64,
}

impl Envelope {
    // 2g(a) with 1/a² − 6/a⁴ ≤ g(a) ≤ 1/a².
    const W1: Envelope = Envelope {
        lead: 2.0,
        remainder: 12.0,
        excess: 0.0,
    };
    const F: Envelope = Envelope {
        lead: -4.0,
        remainder: 24.0,
        excess: 0.0,
    };
    // 36/a⁴ + 4/a² + 8g(a) − 12/a² ∈ [−12/a⁴, 36/a⁴].
    const W2: Envelope = Envelope {
        lead: 12.0,
        remainder: 36.0,
        excess: 36.0,
    };

    fn tail_bound(&self, k: usize, mode: TailMode) -> f64 {
        let k = k as f64;
        // Σ_{j>K} 1/j² ≤ 1/K, Σ_{j>K} 1/j⁴ ≤ 1/(3K³)
        let quartic = 1.0 / (3.0 * PI4 * k * k * k);
        match mode {
            TailMode::None => self.lead.abs() / (PI2 * k) + self.excess * quartic,
            TailMode::LeadingOrder => self.remainder * quartic,
        }
    }
}

/// Grow-only table of W₁ coefficients 2(−1)^{k+1} Ci(πk).
///
/// Entries are pure functions of their index, so concurrent fills agree.
pub struct CoefficientCache {
    table: RwLock<Vec<f64>>,
}

impl CoefficientCache {
    pub const fn new() -> Self {
        CoefficientCache {
            table: RwLock::new(Vec::new()),
        }
    }

    pub fn global() -> &'static CoefficientCache {
        static CACHE: OnceLock<CoefficientCache> = OnceLock::new();
        CACHE.get_or_init(CoefficientCache::new)
    }

    /// Runs `f` on the coefficients for k = 1..=n (slice index k − 1).
    pub fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[f64]) -> R) -> R {
        {
            let table = self.table.read().unwrap_or_else(|e| e.into_inner());
            if table.len() >= n {
                return f(&table[..n]);
            }
        }
        let mut table = self.table.write().unwrap_or_else(|e| e.into_inner());
        let start = table.len();
        for k in start + 1..=n {
            table.push(ci_coefficient_uncached(k));
        }
        f(&table[..n])
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for CoefficientCache {
    fn default() -> Self {
        Self::new()
    }
}

fn alternating_sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn ci_coefficient_uncached(k: usize) -> f64 {
    let ci = cosine_integral(PI * k as f64).expect("πk > 0");
    -2.0 * alternating_sign(k) * ci
}

/// a_k = 2(−1)^{k+1} Ci(πk), the k-th cosine coefficient of W₁.
pub fn ci_coefficient(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(domain("coefficient index starts at 1"));
    }
    Ok(CoefficientCache::global().with_prefix(k, |a| a[k - 1]))
}

/// 4(−1)^k Ci(πk), the k-th cosine coefficient of f, computed from Ci directly.
pub fn f_coefficient(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(domain("coefficient index starts at 1"));
    }
    Ok(4.0 * alternating_sign(k) * cosine_integral(PI * k as f64)?)
}

/// b_k = 36/(πk)⁴ + 4/(πk)² + 4 a_k, the k-th cosine coefficient of W₂.
///
/// From y(3y⁴+5y²+6)/(y²+1) = 3y³ + 2y + 4y/(y²+1) and
/// 2∫₀^∞ (3y³ + 2y) e^{−ay} dy = 36/a⁴ + 4/a².
pub fn w2_coefficient(k: usize) -> Result<f64> {
    let a = ci_coefficient(k)?;
    Ok(w2_from_w1_coefficient(k, a))
}

fn w2_from_w1_coefficient(k: usize, a: f64) -> f64 {
    let t = PI * k as f64;
    let t2 = t * t;
    36.0 / (t2 * t2) + 4.0 / t2 + 4.0 * a
}

/// Reduces x into [0, 1).
fn unit_phase(x: f64) -> f64 {
    let t = x - x.floor();
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

/// Σ_{k=1}^{K} c_k cos(2πkx) plus, when requested, the closed-form
/// lead/(πk)² tail for k > K.
fn sum_with_tail(
    x: f64,
    coeffs: impl Iterator<Item = f64>,
    env: &Envelope,
    cfg: &SeriesConfig,
) -> f64 {
    let t = unit_phase(x);
    let mut main = 0.0;
    let mut inverse_squares = 0.0;
    for (i, c) in coeffs.enumerate() {
        let k = (i + 1) as f64;
        let cos = (2.0 * PI * (k * t).fract()).cos();
        main += c * cos;
        inverse_squares += cos / (k * k);
    }
    match cfg.tail_mode {
        TailMode::None => main,
        TailMode::LeadingOrder => {
            let full = PI2 * (t * t - t + 1.0 / 6.0);
            main + env.lead / PI2 * (full - inverse_squares)
        }
    }
}

/// W₁(x) from its cosine series.
pub fn w1_series(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let env = Envelope::W1;
    cfg.check(&env)?;
    if !x.is_finite() {
        return Err(domain(format!("non-finite x = {x}")));
    }
    Ok(CoefficientCache::global().with_prefix(cfg.max_terms, |a| {
        sum_with_tail(x, a.iter().copied(), &env, cfg)
    }))
}

/// ψ(½+x) + ψ(3/2−x) from its cosine series, for 0 ≤ x ≤ 1.
pub fn f_series(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let env = Envelope::F;
    cfg.check(&env)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("f series is valid on [0, 1], got x = {x}")));
    }
    let body = CoefficientCache::global().with_prefix(cfg.max_terms, |a| {
        sum_with_tail(x, a.iter().map(|&c| -2.0 * c), &env, cfg)
    });
    Ok(-2.0 * LN_2 + body)
}

/// W₂(x) from its cosine series.
pub fn w2_series(x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let env = Envelope::W2;
    cfg.check(&env)?;
    if !x.is_finite() {
        return Err(domain(format!("non-finite x = {x}")));
    }
    Ok(CoefficientCache::global().with_prefix(cfg.max_terms, |a| {
        let coeffs = a
            .iter()
            .enumerate()
            .map(|(i, &c)| w2_from_w1_coefficient(i + 1, c));
        sum_with_tail(x, coeffs, &env, cfg)
    }))
}

/// Upper bound on the truncation error of `w1_series` under `cfg`.
pub fn w1_tail_bound(cfg: &SeriesConfig) -> f64 {
    Envelope::W1.tail_bound(cfg.max_terms, cfg.tail_mode)
}

/// Upper bound on the truncation error of `w2_series` under `cfg`.
pub fn w2_tail_bound(cfg: &SeriesConfig) -> f64 {
    Envelope::W2.tail_bound(cfg.max_terms, cfg.tail_mode)
}

/// A truncated cosine series c₀ + Σ_{k≥1} c_k cos(2πkx).
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    pub constant_term: f64,
    /// `coefficients[k - 1]` is c_k.
    pub coefficients: Vec<f64>,
}

impl CosineSeries {
    pub fn w1(terms: usize) -> Self {
        let coefficients = CoefficientCache::global().with_prefix(terms, <[f64]>::to_vec);
        CosineSeries {
            constant_term: 0.0,
            coefficients,
        }
    }

    pub fn f(terms: usize) -> Self {
        let coefficients = CoefficientCache::global()
            .with_prefix(terms, |a| a.iter().map(|&c| -2.0 * c).collect());
        CosineSeries {
            constant_term: -2.0 * LN_2,
            coefficients,
        }
    }

    pub fn w2(terms: usize) -> Self {
        let coefficients = CoefficientCache::global().with_prefix(terms, |a| {
            a.iter()
                .enumerate()
                .map(|(i, &c)| w2_from_w1_coefficient(i + 1, c))
                .collect()
        });
        CosineSeries {
            constant_term: 0.0,
            coefficients,
        }
    }

    /// The plain partial sum, no tail correction.
    pub fn eval(&self, x: f64) -> f64 {
        let t = unit_phase(x);
        self.constant_term
            + self
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c * (2.0 * PI * ((i + 1) as f64 * t).fract()).cos())
                .sum::<f64>()
    }

    /// Smallest C with |c_k| ≤ C/k² over the stored prefix.
    pub fn decay_constant(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * ((i + 1) as f64).powi(2))
            .fold(0.0, f64::max)
    }
}
