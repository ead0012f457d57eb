//! Integer machinery (factorization, Möbius, totient, divisors) and the
//! reduced-residue sums of ψ(½ + r/m) and W₁(r/m).
//!
//! Each closed form has a direct-summation twin so the two can be compared.

use num_integer::Integer;

use crate::error::{domain, Result};
use crate::fourier::{w1_series, SeriesConfig};
use crate::specfun::{digamma, LN_2};

/// A reduced fraction r/m with 1 ≤ r < m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalArg {
    r: u64,
    m: u64,
}

impl RationalArg {
    pub fn new(r: u64, m: u64) -> Result<Self> {
        if r == 0 || r >= m {
            return Err(domain(format!("{r}/{m} is not in (0, 1)")));
        }
        if r.gcd(&m) != 1 {
            return Err(domain(format!("{r}/{m} is not reduced")));
        }
        Ok(RationalArg { r, m })
    }

    /// Reduces p/q first; fails unless the result lies in (0, 1).
    pub fn reduced(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(domain("zero denominator"));
        }
        let g = p.gcd(&q).max(1);
        RationalArg::new(p / g, q / g)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn value(&self) -> f64 {
        self.r as f64 / self.m as f64
    }
}

impl std::fmt::Display for RationalArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.r, self.m)
    }
}

/// A positive integer together with its factorization and the arithmetic
/// functions derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    m: u64,
    prime_powers: Vec<(u64, u32)>,
    divisors: Vec<u64>,
    mobius: i8,
    totient: u64,
}

impl FactoredInteger {
    pub fn m(&self) -> u64 {
        self.m
    }

    /// (p, e) pairs in increasing order of p.
    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, _)| p)
    }

    /// All positive divisors, sorted.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn mobius(&self) -> i8 {
        self.mobius
    }

    pub fn totient(&self) -> u64 {
        self.totient
    }

    /// The divisors d with μ(d) ≠ 0, paired with μ(d).
    pub fn squarefree_divisors(&self) -> Vec<(u64, i8)> {
        let mut out = vec![(1u64, 1i8)];
        for p in self.primes() {
            let len = out.len();
            for i in 0..len {
                let (d, mu) = out[i];
                out.push((d * p, -mu));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factorizes `m` by trial division.
pub fn factorize(m: u64) -> Result<FactoredInteger> {
    if m == 0 {
        return Err(domain("cannot factorize 0"));
    }
    let mut prime_powers = Vec::new();
    let mut n = m;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        prime_powers.push((n, 1));
    }

    let mut divisors = vec![1u64];
    for &(p, e) in &prime_powers {
        let len = divisors.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    divisors.sort_unstable();

    let mobius = if prime_powers.iter().any(|&(_, e)| e >= 2) {
        0
    } else if prime_powers.len() % 2 == 0 {
        1
    } else {
        -1
    };
    let totient = prime_powers
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p - 1));

    Ok(FactoredInteger {
        m,
        prime_powers,
        divisors,
        mobius,
        totient,
    })
}

/// Integers 1 ≤ r < m coprime to m.
pub fn reduced_residues(m: u64) -> impl Iterator<Item = u64> {
    (1..m).filter(move |r| r.gcd(&m) == 1)
}

fn require_at_least_two(m: &FactoredInteger) -> Result<()> {
    if m.m() < 2 {
        return Err(domain(format!("m must be at least 2, got {}", m.m())));
    }
    Ok(())
}

/// n ψ(n/2) − n ln n − ψ(½); vanishes identically at n = 1.
fn t_full_value(n: u64) -> Result<f64> {
    let nf = n as f64;
    Ok(nf * digamma(0.5 * nf)? - nf * nf.ln() - digamma(0.5)?)
}

/// T(m) = Σ_{j=1}^{m−1} ψ(½ + j/m) in closed form,
/// from the multiplication theorem at z = ½ minus its j = 0 term.
pub fn t_full(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    t_full_value(m.m())
}

/// T(m) by direct summation.
pub fn t_full_direct(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    let mf = m.m() as f64;
    (1..m.m()).map(|j| digamma(0.5 + j as f64 / mf)).sum()
}

/// T*(m) = Σ_{d|m} μ(d) T(m/d), the primitive part of T.
///
/// The d = m term contributes μ(m)·T(1) = 0.
pub fn t_star(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    let mut acc = 0.0;
    for (d, mu) in m.squarefree_divisors() {
        acc += f64::from(mu) * t_full_value(m.m() / d)?;
    }
    Ok(acc)
}

/// T*(m) = Σ_{(r,m)=1} ψ(½ + r/m) by direct summation.
pub fn t_star_direct(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    let mf = m.m() as f64;
    reduced_residues(m.m())
        .map(|r| digamma(0.5 + r as f64 / mf))
        .sum()
}

/// (Σ_{d|m} μ(d)/d, Σ_{d|m} μ(d) ln d / d) by enumeration over divisors.
pub fn divisor_identity_lhs(m: &FactoredInteger) -> (f64, f64) {
    m.squarefree_divisors()
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (d, mu)| {
            let w = f64::from(mu) / d as f64;
            (a + w, b + w * (d as f64).ln())
        })
}

/// (φ(m)/m, −(φ(m)/m) Σ_{p|m} ln p/(p−1)).
pub fn divisor_identity_rhs(m: &FactoredInteger) -> (f64, f64) {
    let ratio = m.totient() as f64 / m.m() as f64;
    (ratio, -ratio * prime_log_sum(m))
}

/// Σ_{p|m} ln p / (p − 1).
pub fn prime_log_sum(m: &FactoredInteger) -> f64 {
    m.primes().map(|p| (p as f64).ln() / (p - 1) as f64).sum()
}

/// Σ_{(r,m)=1} W₁(r/m) in closed form:
///
/// φ(m) ln(m/2) + φ(m) Σ_{p|m} ln p/(p−1) − m Σ_{d|m} μ(d)/d · ψ(m/(2d))
pub fn residue_sum_closed(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    let mf = m.m() as f64;
    let phi = m.totient() as f64;
    let mut psi_sum = 0.0;
    for (d, mu) in m.squarefree_divisors() {
        let df = d as f64;
        psi_sum += f64::from(mu) / df * digamma(mf / (2.0 * df))?;
    }
    Ok(phi * (0.5 * mf).ln() + phi * prime_log_sum(m) - mf * psi_sum)
}

/// Σ_{(r,m)=1} W₁(r/m) from the cosine series of W₁, pairing r with m − r.
pub fn residue_sum_direct(m: &FactoredInteger, cfg: &SeriesConfig) -> Result<f64> {
    require_at_least_two(m)?;
    let mv = m.m();
    let mf = mv as f64;
    let mut acc = 0.0;
    for r in reduced_residues(mv).take_while(|&r| 2 * r <= mv) {
        let w = w1_series(r as f64 / mf, cfg)?;
        acc += if 2 * r == mv { w } else { 2.0 * w };
    }
    Ok(acc)
}

/// Σ_{(r,m)=1} W₁(r/m) = −φ(m) ln 2 − Σ_{(r,m)=1} ψ(½ + r/m).
pub fn residue_sum_via_psi(m: &FactoredInteger) -> Result<f64> {
    require_at_least_two(m)?;
    Ok(-(m.totient() as f64) * LN_2 - t_star_direct(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use proptest::prelude::*;

    fn fac(m: u64) -> FactoredInteger {
        factorize(m).unwrap()
    }

    #[test]
    fn factorize_examples() {
        let f = fac(12);
        assert_eq!(f.prime_powers(), &[(2, 2), (3, 1)]);
        assert_eq!(f.mobius(), 0);
        assert_eq!(f.totient(), 4);
        assert_eq!(f.divisors(), &[1, 2, 3, 4, 6, 12]);

        let one = fac(1);
        assert!(one.prime_powers().is_empty());
        assert_eq!((one.mobius(), one.totient()), (1, 1));
        assert_eq!(one.divisors(), &[1]);

        let f = fac(30);
        assert_eq!((f.mobius(), f.totient()), (-1, 8));

        let f = fac(999_999_937);
        assert_eq!(f.prime_powers(), &[(999_999_937, 1)]);
        assert!(factorize(0).is_err());
    }

    proptest! {
        #[test]
        fn factorization_invariants(m in 1u64..200_000) {
            let f = fac(m);
            let prod: u64 = f.prime_powers().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, m);
            let count: u32 = f.prime_powers().iter().map(|&(_, e)| e + 1).product();
            prop_assert_eq!(f.divisors().len() as u32, count);
            prop_assert!(f.divisors().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(f.divisors().iter().all(|d| m % d == 0));
            let brute = (1..=m.min(5000)).filter(|r| r.gcd(&m) == 1).count() as u64;
            if m <= 5000 {
                prop_assert_eq!(f.totient(), brute);
            }
        }
    }

    #[test]
    fn mobius_sums_vanish_above_one() {
        for m in 1..=10_000u64 {
            let f = fac(m);
            let s: i64 = f
                .divisors()
                .iter()
                .map(|&d| i64::from(fac(d).mobius()))
                .sum();
            assert_eq!(s, if m == 1 { 1 } else { 0 }, "m = {m}");
        }
    }

    #[test]
    fn squarefree_divisors_carry_mobius() {
        let f = fac(60);
        for (d, mu) in f.squarefree_divisors() {
            assert_eq!(mu, fac(d).mobius());
        }
        assert_eq!(f.squarefree_divisors().len(), 8);
    }

    #[test]
    fn rational_arg_validation() {
        assert!(RationalArg::new(1, 2).is_ok());
        assert!(RationalArg::new(2, 4).is_err());
        assert!(RationalArg::new(0, 4).is_err());
        assert!(RationalArg::new(4, 4).is_err());
        assert_eq!(
            RationalArg::reduced(2, 4).unwrap(),
            RationalArg::new(1, 2).unwrap()
        );
    }

    #[test]
    fn t_full_small_cases() {
        let two = fac(2);
        assert!((t_full(&two).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((t_full_direct(&two).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let three = fac(3);
        let direct = digamma(5.0 / 6.0).unwrap() + digamma(7.0 / 6.0).unwrap();
        assert!((t_full(&three).unwrap() - direct).abs() < 1e-13);
        assert!(t_full(&fac(1)).is_err());
        assert_eq!(t_full_value(1).unwrap(), 0.0);
    }

    #[test]
    fn t_full_matches_direct() {
        for m in 2..=200 {
            let f = fac(m);
            let d = t_full(&f).unwrap() - t_full_direct(&f).unwrap();
            assert!(d.abs() < 1e-10, "m = {m}: {d:e}");
        }
    }

    #[test]
    fn t_star_matches_direct_and_groups() {
        assert!((t_star(&fac(2)).unwrap() + EULER_GAMMA).abs() < 1e-14);
        let four = fac(4);
        let direct = digamma(0.75).unwrap() + digamma(1.25).unwrap();
        assert!((t_star(&four).unwrap() - direct).abs() < 1e-13);
        assert!(
            (t_star(&four).unwrap() - (t_full(&four).unwrap() - t_full(&fac(2)).unwrap())).abs()
                < 1e-13
        );
        for m in 2..=200 {
            let f = fac(m);
            let d = t_star(&f).unwrap() - t_star_direct(&f).unwrap();
            assert!(d.abs() < 1e-10, "m = {m}: {d:e}");
            let grouped: f64 = f
                .divisors()
                .iter()
                .filter(|&&n| n > 1)
                .map(|&n| t_star_direct(&fac(n)).unwrap())
                .sum();
            assert!((t_full(&f).unwrap() - grouped).abs() < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn divisor_identity_examples() {
        let (a, _) = divisor_identity_lhs(&fac(12));
        assert!((a - 1.0 / 3.0).abs() < 1e-15);
        let (_, b) = divisor_identity_lhs(&fac(2));
        assert!((b + LN_2 / 2.0).abs() < 1e-15);
        let f = fac(30);
        let (l, r) = (divisor_identity_lhs(&f), divisor_identity_rhs(&f));
        assert!((l.0 - r.0).abs() < 1e-14 && (l.1 - r.1).abs() < 1e-14);
    }

    #[test]
    fn residue_sum_small_cases() {
        let expected2 = EULER_GAMMA - LN_2;
        assert!((residue_sum_closed(&fac(2)).unwrap() - expected2).abs() < 1e-14);
        assert!((residue_sum_via_psi(&fac(2)).unwrap() - expected2).abs() < 1e-14);
        let expected3 = 3.0 * 3f64.ln() + 2.0 * LN_2 + 2.0 * EULER_GAMMA - 6.0;
        assert!((residue_sum_closed(&fac(3)).unwrap() - expected3).abs() < 1e-13);
        assert!((expected3 + 0.163_437).abs() < 1e-6);
    }

    #[test]
    fn residue_sum_direct_pairs() {
        let cfg = SeriesConfig::leading_order(1e-10).unwrap();
        let d2 = residue_sum_direct(&fac(2), &cfg).unwrap();
        assert_eq!(d2, w1_series(0.5, &cfg).unwrap());
        let d6 = residue_sum_direct(&fac(6), &cfg).unwrap();
        assert_eq!(d6, 2.0 * w1_series(1.0 / 6.0, &cfg).unwrap());
        assert!(residue_sum_direct(&fac(1), &cfg).is_err());
    }

    #[test]
    fn three_residue_paths_agree() {
        let cfg = SeriesConfig::leading_order(1e-10).unwrap();
        for m in 2..=100 {
            let f = fac(m);
            let closed = residue_sum_closed(&f).unwrap();
            let via = residue_sum_via_psi(&f).unwrap();
            let direct = residue_sum_direct(&f, &cfg).unwrap();
            assert!((closed - via).abs() < 1e-9, "m = {m}");
            assert!((closed - direct).abs() < 1e-7, "m = {m}");
            assert!((via - direct).abs() < 1e-7, "m = {m}");
        }
    }
}
