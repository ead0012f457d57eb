//! Scalar special functions: digamma, the cosine and sine integrals,
//! `E1` on the positive imaginary axis, and Gauss's finite formulas for
//! the digamma function at rational arguments.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::arith::RationalArg;
use crate::error::{domain, Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Distance from a non-positive integer inside which `digamma` reports a pole.
pub const POLE_GUARD: f64 = 1e-12;

/// `ln 2`, `ln 4`.
pub const LN_2: f64 = std::f64::consts::LN_2;
pub const LN_4: f64 = 1.386_294_361_119_890_6;

/// Below this point Ci and Si are summed from their power series; above it
/// the auxiliary functions come from the continued fraction for `E1(ix)`.
pub const CI_SI_CROSSOVER: f64 = 4.0;

/// Threshold where digamma switches from recurrence to the asymptotic series.
const DIGAMMA_ASYMPTOTIC_FROM: f64 = 12.0;

/// `B_{2k} / (2k)` for k = 1..=7 (B2 through B14).
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// A complex value with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Digamma function ψ(x) = Γ'(x)/Γ(x).
///
/// Arguments below ½ go through the reflection formula
/// ψ(x) = ψ(1 − x) − π cot(πx). The rest are shifted above 12 with
/// ψ(x) = ψ(x + 1) − 1/x and finished with the asymptotic expansion
/// truncated after the B14 term.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("digamma of non-finite argument {x}")));
    }
    if x <= 0.0 && (x - x.round()).abs() < POLE_GUARD {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        // cot(πx) has period 1; reduce first so large |x| keeps its accuracy.
        let t = x - x.round();
        return Ok(digamma_positive(1.0 - x) - PI / (PI * t).tan());
    }
    Ok(digamma_positive(x))
}

fn digamma_positive(mut x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let mut shift = 0.0;
    while x < DIGAMMA_ASYMPTOTIC_FROM {
        shift += 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Horner in 1/x² from the smallest term up.
    let mut tail = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        tail = (tail + c) * inv2;
    }
    x.ln() - 0.5 / x - tail - shift
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Σ_{k≥1} (−z²)^k / (2k·(2k)!), the non-logarithmic part of Ci.
fn ci_power_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut acc = CompensatedSum::default();
    // p_k = (−z²)^k / (2k)!
    let mut p = 1.0;
    for k in 1..200 {
        let n = 2.0 * k as f64;
        p *= -z2 / ((n - 1.0) * n);
        let term = p / n;
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs().max(1e-300) {
            break;
        }
    }
    acc.value()
}

/// Σ_{k≥0} (−1)^k z^{2k+1} / ((2k+1)·(2k+1)!).
fn si_power_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut acc = CompensatedSum::default();
    // p_k = (−1)^k z^{2k+1} / (2k+1)!
    let mut p = z;
    acc.add(z);
    for k in 1..200 {
        let n = 2.0 * k as f64 + 1.0;
        p *= -z2 / ((n - 1.0) * n);
        let term = p / n;
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// `e^{ix} E1(ix)` for x > 0 by the modified Lentz evaluation of
/// E1(z) = e^{−z} / (z + 1 − 1²/(z + 3 − 2²/(z + 5 − …))).
///
/// The real part is the auxiliary function g(x) = ∫₀^∞ t e^{−xt}/(1+t²) dt,
/// the imaginary part is −f(x) with f(x) = ∫₀^∞ e^{−xt}/(1+t²) dt.
fn e1_imag_auxiliary(x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).l1_norm() < EPS {
            break;
        }
    }
    h
}

/// Cosine integral Ci(z) = −∫_z^∞ cos t / t dt for z > 0.
pub fn cosine_integral(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("cosine integral needs z > 0, got {z}")));
    }
    if z <= CI_SI_CROSSOVER {
        Ok(EULER_GAMMA + z.ln() + ci_power_series(z))
    } else {
        let h = e1_imag_auxiliary(z);
        let (s, c) = z.sin_cos();
        // Ci(z) = −Re E1(iz) = −Re(e^{−iz} h)
        Ok(-(h.re * c + h.im * s))
    }
}

/// Sine integral Si(z) = ∫₀^z sin t / t dt for z ≥ 0.
pub fn sine_integral(z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain(format!("sine integral needs z >= 0, got {z}")));
    }
    if z <= CI_SI_CROSSOVER {
        Ok(si_power_series(z))
    } else {
        let h = e1_imag_auxiliary(z);
        let (s, c) = z.sin_cos();
        // Im E1(iz) = h.im cos z − h.re sin z = Si(z) − π/2
        Ok(FRAC_PI_2 + (h.im * c - h.re * s))
    }
}

/// E1(ix) for x > 0, assembled from Ci and Si:
/// E1(ix) = −Ci(x) + i (Si(x) − π/2).
pub fn e1_imag_axis(x: f64) -> Result<ComplexValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("E1(ix) needs x > 0, got {x}")));
    }
    let ci = cosine_integral(x)?;
    let si = sine_integral(x)?;
    Ok(ComplexValue {
        re: -ci,
        im: si - FRAC_PI_2,
    })
}

/// ψ(r/m) from Gauss's digamma theorem, cotangent / log-sine form:
///
/// ψ(r/m) = −γ − ln(2m) − (π/2) cot(πr/m) + 2 Σ_{1≤j<m/2} cos(2πrj/m) ln sin(πj/m)
///
/// For even m the j = m/2 term is cos(πr)·ln 1 = 0 and is included as such.
pub fn gauss_digamma_cot_form(arg: RationalArg) -> Result<f64> {
    let (r, m) = (arg.r(), arg.m());
    let mf = m as f64;
    let mut acc = CompensatedSum::default();
    let upper = m.div_ceil(2) - 1;
    for j in 1..=upper {
        let phase = ((r * j) % m) as f64 / mf;
        let w = (2.0 * PI * phase).cos();
        acc.add(2.0 * w * (PI * j as f64 / mf).sin().ln());
    }
    if m % 2 == 0 {
        let w = if r % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(w * (PI * 0.5).sin().ln());
    }
    let cot = 1.0 / (PI * r as f64 / mf).tan();
    Ok(-EULER_GAMMA - (2.0 * mf).ln() - FRAC_PI_2 * cot + acc.value())
}

/// Imaginary residue above which the exponential Gauss form is rejected.
pub const GAUSS_EXP_CANCELLATION_LIMIT: f64 = 1e-10;

/// ψ(r/m) from the exponential form of Gauss's theorem:
///
/// ψ(r/m) = −γ − ln m + Σ_{j=1}^{m−1} e^{−2πijr/m} Log(1 − e^{2πij/m})
///
/// with the principal logarithm. Returns the real part together with the
/// imaginary residue, which cancels analytically.
pub fn gauss_digamma_exp_form_with_residue(arg: RationalArg) -> Result<(f64, f64)> {
    let (r, m) = (arg.r(), arg.m());
    let mf = m as f64;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for j in 1..m {
        let theta = 2.0 * PI * j as f64 / mf;
        let half = 0.5 * theta;
        // 1 − e^{iθ} = 2 sin²(θ/2) − i sin θ
        let one_minus = Complex64::new(2.0 * half.sin().powi(2), -theta.sin());
        let phase = 2.0 * PI * ((r * j) % m) as f64 / mf;
        let rot = Complex64::new(phase.cos(), -phase.sin());
        let term = rot * one_minus.ln();
        re.add(term.re);
        im.add(term.im);
    }
    let residue = im.value();
    if residue.abs() > GAUSS_EXP_CANCELLATION_LIMIT {
        return Err(Error::Cancellation {
            residue: residue.abs(),
            limit: GAUSS_EXP_CANCELLATION_LIMIT,
        });
    }
    Ok((-EULER_GAMMA - mf.ln() + re.value(), residue))
}

pub fn gauss_digamma_exp_form(arg: RationalArg) -> Result<f64> {
    gauss_digamma_exp_form_with_residue(arg).map(|(v, _)| v)
}

/// Which finite formula evaluates ψ at a rational point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussForm {
    Cot,
    Exp,
}

/// ψ(p/q) for a positive rational p/q using one of Gauss's forms.
///
/// The argument is reduced into (0, 1] with ψ(t + 1) = ψ(t) + 1/t;
/// ψ(1) = −γ is used directly.
pub fn digamma_rational(p: u64, q: u64, form: GaussForm) -> Result<f64> {
    if p == 0 || q == 0 {
        return Err(domain(format!(
            "digamma_rational needs a positive fraction, got {p}/{q}"
        )));
    }
    let g = num_integer::gcd(p, q);
    let (p, q) = (p / g, q / g);
    // p/q = n + r/q with 0 ≤ r < q; when r = 0 the base point is 1.
    let (base_r, steps) = if p % q == 0 {
        (q, p / q - 1)
    } else {
        (p % q, p / q)
    };
    let base = if base_r == q {
        -EULER_GAMMA
    } else {
        let arg = RationalArg::new(base_r, q)?;
        match form {
            GaussForm::Cot => gauss_digamma_cot_form(arg)?,
            GaussForm::Exp => gauss_digamma_exp_form(arg)?,
        }
    };
    let t = base_r as f64 / q as f64;
    let shift: f64 = (0..steps).map(|i| 1.0 / (t + i as f64)).sum();
    Ok(base + shift)
}
