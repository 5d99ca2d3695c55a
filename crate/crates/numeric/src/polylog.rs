//! Classical, multiple and single-valued polylogarithms in double precision.
//!
//! `Li_n` uses the defining series for `|z| ≤ 1/2`, the expansion in
//! `μ = log z` for `1/2 < |z| ≤ 1` and the inversion formula beyond. The
//! single-valued `𝓛_n` only ever evaluates `Li_k` inside the closed unit
//! disc, using `𝓛_n(1/z) = (-1)^{n-1} 𝓛_n(z)` outside it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use hodgecor_core::rational::Q;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{NumError, Result};

const SERIES_TERMS: usize = 120;

/// Exact Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_exact(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        let mut acc = Q::zero();
        let mut binom = Q::one(); // binom(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += &binom * bk;
            binom = binom * Q::from_integer((m + 1 - k).into()) / Q::from_integer((k + 1).into());
        }
        b.push(-acc / Q::from_integer((m + 1).into()));
    }
    b
}

fn bernoulli_f64() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| bernoulli_exact(SERIES_TERMS + 2).iter().map(|x| x.to_f64().expect("finite")).collect())
}

/// `β_k`, the Taylor coefficients of `2x/(e^{2x} - 1)`, i.e. `2^k B_k / k!`.
pub fn beta_exact(k: usize) -> Q {
    let b = &bernoulli_exact(k)[k];
    let mut f = Q::one();
    for j in 1..=k {
        f = f * Q::from_integer(2.into()) / Q::from_integer(j.into());
    }
    b * f
}

fn betas() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| (0..40).map(|k| beta_exact(k).to_f64().expect("finite")).collect())
}

/// `ζ(s)` for integer `s ≥ 2`, by Euler–Maclaurin summation.
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta needs s ≥ 2");
    let n = 12u32;
    let sf = s as f64;
    let nf = n as f64;
    let mut sum: f64 = (1..n).map(|k| (k as f64).powf(-sf)).sum();
    sum += nf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * nf.powf(-sf);
    let b = bernoulli_f64();
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}
    let mut rising = sf;
    let mut fact = 2.0;
    for j in 1..=10usize {
        sum += b[2 * j] / fact * rising * nf.powf(-sf - 2.0 * j as f64 + 1.0);
        rising *= (sf + 2.0 * j as f64 - 1.0) * (sf + 2.0 * j as f64);
        fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
    }
    sum
}

/// `ζ(1 - m)` extended to `m ≥ 1` through Bernoulli numbers; `ζ(1)` is excluded by callers.
fn zeta_int(s: i64) -> f64 {
    if s >= 2 {
        zeta(s as u32)
    } else {
        let m = (-s) as usize; // ζ(-m) = (-1)^m B_{m+1}/(m+1)
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * bernoulli_f64()[m + 1] / (m + 1) as f64
    }
}

fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn li_series(n: u32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::zero();
    let mut p = z;
    for k in 1..10_000u32 {
        let term = p / (k as f64).powi(n as i32);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        p *= z;
    }
    sum
}

/// `Li_n(e^μ)` for `|μ| < 2π`, `n ≥ 2`.
fn li_log_series(n: u32, z: Complex64) -> Complex64 {
    if z == Complex64::one() {
        return Complex64::new(zeta(n), 0.0);
    }
    let mu = z.ln();
    let mut sum = Complex64::zero();
    let mut pw = Complex64::one(); // μ^k / k!
    for k in 0..SERIES_TERMS {
        if k as u32 == n - 1 {
            sum += pw * (harmonic(n - 1) - (-mu).ln());
        } else {
            sum += pw * zeta_int(n as i64 - k as i64);
        }
        pw = pw * mu / (k + 1) as f64;
    }
    sum
}

/// `B_n(x)` for complex `x`.
fn bernoulli_poly(n: usize, x: Complex64) -> Complex64 {
    let b = bernoulli_f64();
    let mut binom = 1.0;
    let mut sum = Complex64::zero();
    for k in 0..=n {
        sum += x.powu((n - k) as u32) * b[k] * binom;
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    sum
}

/// `Li_n(z)` on the principal branch (cut along `(1, ∞)`).
///
/// For `|z| > 1` the inversion formula is used with the principal `log(-z)`;
/// on the cut this gives one of the two boundary values.
pub fn li_n(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(NumError::Domain("Li_n needs n ≥ 1".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(NumError::Range(format!("non-finite argument {z}")));
    }
    let r = z.norm();
    if n == 1 {
        if r >= 1.0 {
            return Err(NumError::Domain(format!("Li_1 series diverges at |z| = {r}")));
        }
        return Ok(-(Complex64::one() - z).ln());
    }
    if r <= 0.5 {
        Ok(li_series(n, z))
    } else if r <= 1.0 {
        Ok(li_log_series(n, z))
    } else {
        let inv = li_n(n, z.inv())?;
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let x = Complex64::new(0.5, 0.0) + (-z).ln() / two_pi_i;
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let rhs = -two_pi_i.powu(n) / fact * bernoulli_poly(n as usize, x);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(rhs - inv * sign)
    }
}

fn li_in_disc(n: u32, z: Complex64) -> Complex64 {
    if n == 1 {
        -(Complex64::one() - z).ln()
    } else if z.norm() <= 0.5 {
        li_series(n, z)
    } else {
        li_log_series(n, z)
    }
}

/// Beyond this modulus `1/z` leaves the normal floating-point range.
pub const MAX_MODULUS: f64 = 1e300;

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() && z.norm() <= MAX_MODULUS {
        Ok(())
    } else {
        Err(NumError::Range(format!("argument {z} out of range")))
    }
}

/// The Bloch–Wigner function `Im Li_2(z) + log|z| arg(1 - z)`.
pub fn dilog_sv(z: Complex64) -> Result<f64> {
    check_finite(z)?;
    if z == Complex64::zero() || z == Complex64::one() {
        return Ok(0.0);
    }
    if z.norm() > 1.0 {
        return Ok(-dilog_sv(z.inv())?);
    }
    Ok(li_in_disc(2, z).im + z.norm().ln() * (Complex64::one() - z).arg())
}

/// `𝓛_n(z)`: real part for odd `n`, imaginary part for even `n`, of
/// `Σ_{k<n} β_k log^k|z| Li_{n-k}(z)`.
pub fn polylog_sv(n: u32, z: Complex64) -> Result<f64> {
    if n < 2 {
        return Err(NumError::Domain("single-valued polylogarithm needs n ≥ 2".into()));
    }
    check_finite(z)?;
    if z == Complex64::zero() {
        return Ok(0.0);
    }
    if z.norm() > 1.0 {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        return Ok(sign * polylog_sv(n, z.inv())?);
    }
    let l = z.norm().ln();
    let beta = betas();
    let mut sum = Complex64::zero();
    for k in 0..n as usize {
        if k > 0 && l == 0.0 {
            break;
        }
        sum += li_in_disc(n - k as u32, z) * (beta[k] * l.powi(k as i32));
    }
    Ok(if n % 2 == 1 { sum.re } else { sum.im })
}

/// A truncated multiple polylogarithm together with a bound on the omitted tail.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `Li_{n_1,…,n_r}(z_1,…,z_r) = Σ_{0<k_1<…<k_r} Π z_i^{k_i} / k_i^{n_i}`.
pub fn multi_li(ns: &[u32], zs: &[Complex64]) -> Result<SeriesValue> {
    if ns.is_empty() || ns.len() != zs.len() || ns.iter().any(|&n| n == 0) {
        return Err(NumError::Domain("multi_li needs matching nonempty ns (all > 0) and zs".into()));
    }
    if zs.iter().any(|z| *z == Complex64::zero()) {
        return Ok(SeriesValue { value: Complex64::zero(), tail_bound: 0.0 });
    }
    let rho = zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(rho < 1.0) {
        return Err(NumError::Domain(format!("multi_li series diverges for max|z_i| = {rho}")));
    }
    let r = ns.len();
    // each inner partial sum is bounded by 1/(1-ρ); the outer tail by ρ^{K+1}/(1-ρ)
    let inner = (1.0 - rho).powi(-(r as i32 - 1));
    let mut k_max = 1usize;
    while rho.powi(k_max as i32 + 1) / (1.0 - rho) * inner > 1e-17 {
        k_max += 1;
        if k_max > 2_000_000 {
            return Err(NumError::Domain("multi_li converges too slowly".into()));
        }
    }
    // s[j] = Σ_{k_1<…<k_{j+1} ≤ k} (partial nested sums)
    let mut s = vec![Complex64::zero(); r];
    let mut pw: Vec<Complex64> = vec![Complex64::one(); r];
    for k in 1..=k_max {
        for (p, z) in pw.iter_mut().zip(zs) {
            *p *= z;
        }
        let kf = k as f64;
        for j in (0..r).rev() {
            let prev = if j == 0 { Complex64::one() } else { s[j - 1] };
            s[j] += prev * pw[j] / kf.powi(ns[j] as i32);
        }
    }
    let tail_bound = rho.powi(k_max as i32 + 1) / (1.0 - rho) * inner;
    Ok(SeriesValue { value: s[r - 1], tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodgecor_core::rational::qf;

    #[test]
    fn bernoulli_and_beta() {
        let b = bernoulli_exact(6);
        assert_eq!(b[1], qf(-1, 2));
        assert_eq!(b[2], qf(1, 6));
        assert_eq!(b[4], qf(-1, 30));
        assert_eq!(beta_exact(0), qf(1, 1));
        assert_eq!(beta_exact(1), qf(-1, 1));
        assert_eq!(beta_exact(2), qf(1, 3));
        assert_eq!(beta_exact(3), qf(0, 1));
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta(3) - 1.2020569031595942).abs() < 1e-15);
        assert!((zeta_int(0) + 0.5).abs() < 1e-15);
        assert!((zeta_int(-1) + 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_on_overlap() {
        for &z in &[Complex64::new(0.45, 0.2), Complex64::new(-0.3, 0.4), Complex64::new(0.1, -0.49)] {
            for n in 2..6 {
                let a = li_series(n, z);
                let b = li_log_series(n, z);
                assert!((a - b).norm() < 1e-14, "n={n} z={z}: {a} vs {b}");
            }
        }
    }
}
