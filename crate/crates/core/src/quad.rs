//! Direct evaluation of W₁(x), W₂(x) and the Laplace coefficients
//! 2∫₀^∞ y/(y²+1) e^{−πky} dy by adaptive Gauss–Kronrod quadrature.
//!
//! The semi-infinite range is truncated at `cutoff_y`; the configuration
//! is rejected unless the discarded tail is below a tenth of `abs_tol`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerances and truncation for the semi-infinite integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub cutoff_y: f64,
}

impl QuadConfig {
    pub const DEFAULT_ABS_TOL: f64 = 1e-12;

    pub fn w1_default() -> Self {
        QuadConfig {
            abs_tol: Self::DEFAULT_ABS_TOL,
            rel_tol: 0.0,
            max_subdivisions: 4000,
            cutoff_y: 30.0,
        }
    }

    pub fn w2_default() -> Self {
        QuadConfig {
            cutoff_y: 40.0,
            ..Self::w1_default()
        }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        QuadConfig { abs_tol, ..self }
    }

    /// Checks the field invariants and the tail bound for `kernel`.
    pub fn validate(&self, kernel: Kernel) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Config(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol >= 0.0) {
            return Err(Error::Config(format!(
                "rel_tol must be non-negative, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        if !(self.cutoff_y > 0.0) || !self.cutoff_y.is_finite() {
            return Err(Error::Config(format!(
                "cutoff_y must be positive, got {}",
                self.cutoff_y
            )));
        }
        let tail = kernel.tail_bound(self.cutoff_y);
        if !(tail < self.abs_tol / 10.0) {
            return Err(Error::Config(format!(
                "cutoff_y = {} leaves a tail of up to {tail:e}, above abs_tol/10",
                self.cutoff_y
            )));
        }
        Ok(())
    }
}

/// The integrands handled here, for tail bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    W1,
    W2,
    Laplace(u32),
}

impl Kernel {
    /// Upper bound on ∫_Y^∞ |integrand| dy.
    pub fn tail_bound(&self, y: f64) -> f64 {
        // |Re 1/(E e^{iθ} − 1)| ≤ 1/(E − 1) = e^{−πy}(1 + ε) for y ≥ Y
        let eps = 1.0 / (PI * y).exp_m1();
        match *self {
            // 2·y/(y²+1) ≤ 1, so the bound is 2∫ e^{−πy}(1+ε) with room to spare.
            Kernel::W1 => 2.0 * (1.0 + eps) * (-PI * y).exp() / PI,
            // y(3y⁴+5y²+6)/(y²+1) ≤ 3y³ + 2y + 2
            Kernel::W2 => {
                let poly = 3.0 * power_exp_tail(3, PI, y)
                    + 2.0 * power_exp_tail(1, PI, y)
                    + 2.0 * power_exp_tail(0, PI, y);
                2.0 * (1.0 + eps) * poly
            }
            Kernel::Laplace(k) => {
                let a = PI * f64::from(k);
                (-a * y).exp() / a
            }
        }
    }
}

/// ∫_Y^∞ y^n e^{−ay} dy = e^{−aY} Σ_{j=0}^{n} n!/j! · Y^j / a^{n−j+1}.
fn power_exp_tail(n: u32, a: f64, y: f64) -> f64 {
    let mut sum = 0.0;
    let mut coef = 1.0; // n!/j!, built from j = n downwards
    for j in (0..=n).rev() {
        sum += coef * y.powi(j as i32) / a.powi((n - j + 1) as i32);
        coef *= f64::from(j.max(1));
    }
    (-a * y).exp() * sum
}

/// Re[1/(e^{π(y+2ix)} − 1)] without complex arithmetic.
///
/// With E = e^{πy}, c = cos 2πx and s = sin πx (so 1 − c = 2s²):
/// (Ec − 1)/(E² − 2Ec + 1) = ((E−1) − 2Es²)/((E−1)² + 4Es²).
fn geometric_real_part(x: f64, y: f64) -> f64 {
    let py = PI * y;
    if py > 40.0 {
        // Scaled form; E² would eventually overflow.
        let inv = (-py).exp();
        let c = (2.0 * PI * x).cos();
        return (c - inv) * inv / (1.0 - 2.0 * c * inv + inv * inv);
    }
    // With u = E − 1 and v = 2s√E the ratio is (u − v²/2)/(u² + v²);
    // scaling by max(u, v) keeps it finite when u² underflows.
    let u = py.exp_m1();
    let v = 2.0 * (PI * x).sin().abs() * (u + 1.0).sqrt();
    let scale = u.max(v);
    let (us, vs) = (u / scale, v / scale);
    (us - 0.5 * vs * v) / (scale * (us * us + vs * vs))
}

/// The real integrand of W₁ at (x, y), y > 0:
/// 2 · y/(y²+1) · Re[1/(e^{π(y+2ix)} − 1)].
pub fn w1_real_integrand(x: f64, y: f64) -> f64 {
    2.0 * y / (y * y + 1.0) * geometric_real_part(x, y)
}

/// The real integrand of W₂ at (x, y), y > 0.
pub fn w2_real_integrand(x: f64, y: f64) -> f64 {
    let y2 = y * y;
    2.0 * y * (3.0 * y2 * y2 + 5.0 * y2 + 6.0) / (y2 + 1.0) * geometric_real_part(x, y)
}

fn laplace_integrand(k: u32, y: f64) -> f64 {
    2.0 * y / (y * y + 1.0) * (-PI * f64::from(k) * y).exp()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// 15-point Kronrod estimate with the embedded 7-point Gauss rule;
/// the error estimate is |K − G|. Endpoints are never evaluated.
fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive bisection over the given breakpoints.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<f64> {
    let mut heap: BinaryHeap<Segment> = breakpoints
        .windows(2)
        .map(|w| kronrod15(&f, w[0], w[1]))
        .collect();
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(value);
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Convergence {
                estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // The interval can no longer be split in double precision.
            return Err(Error::Convergence {
                estimate: error,
                subdivisions,
            });
        }
        heap.push(kronrod15(&f, worst.a, mid));
        heap.push(kronrod15(&f, mid, worst.b));
        subdivisions += 1;
    }
}

/// Initial partition of (0, cutoff]: dense near 0, where the integrand
/// may have a narrow peak of width ~ sin(πx).
fn breakpoints(cutoff: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    pts.extend(
        [1.0 / 64.0, 1.0 / 16.0, 0.25, 1.0, 4.0, 16.0]
            .into_iter()
            .filter(|&p| p < cutoff),
    );
    pts.push(cutoff);
    pts
}

/// Budget for the truncated integral: what is left after the tail bound.
fn interior_tol(cfg: &QuadConfig, kernel: Kernel) -> f64 {
    cfg.abs_tol - kernel.tail_bound(cfg.cutoff_y)
}

/// W₁(x) = 2∫₀^∞ Re[y / ((y²+1)(e^{π(y+2ix)} − 1))] dy.
pub fn w1_quadrature(x: f64, cfg: &QuadConfig) -> Result<f64> {
    cfg.validate(Kernel::W1)?;
    integrate(
        |y| w1_real_integrand(x, y),
        &breakpoints(cfg.cutoff_y),
        interior_tol(cfg, Kernel::W1),
        cfg.rel_tol,
        cfg.max_subdivisions,
    )
}

/// W₂(x) = 2∫₀^∞ Re[y(3y⁴+5y²+6) / ((y²+1)(e^{π(y+2ix)} − 1))] dy.
pub fn w2_quadrature(x: f64, cfg: &QuadConfig) -> Result<f64> {
    cfg.validate(Kernel::W2)?;
    integrate(
        |y| w2_real_integrand(x, y),
        &breakpoints(cfg.cutoff_y),
        interior_tol(cfg, Kernel::W2),
        cfg.rel_tol,
        cfg.max_subdivisions,
    )
}

/// a_k = 2∫₀^∞ y/(y²+1) e^{−πky} dy.
pub fn laplace_coefficient(k: u32, cfg: &QuadConfig) -> Result<f64> {
    if k == 0 {
        return Err(crate::error::domain("coefficient index starts at 1"));
    }
    let kernel = Kernel::Laplace(k);
    cfg.validate(kernel)?;
    // Most of the mass sits within a few multiples of 1/(πk).
    let scale = 1.0 / (PI * f64::from(k));
    let mut pts: Vec<f64> = vec![0.0];
    pts.extend(
        [0.25, 1.0, 4.0, 16.0, 64.0]
            .into_iter()
            .map(|m| m * scale)
            .filter(|&p| p < cfg.cutoff_y),
    );
    pts.push(cfg.cutoff_y);
    integrate(
        |y| laplace_integrand(k, y),
        &pts,
        interior_tol(cfg, kernel),
        cfg.rel_tol,
        cfg.max_subdivisions,
    )
}
