//! Closed forms for Hodge correlators, as the real number multiplying `(2πi)^{-w}`.
//!
//! Weight 1 is `log|z_0 - z_1|`, weight 2 is `𝓛_2((z_1 - z_0)/(z_2 - z_0))`.
//! In higher weight a word is reduced by an additive shift to at most two
//! nonzero letters; `(p, 0^a, q, 0^b)` is brought to depth one either by a
//! rotation or by the first-shuffle recursion
//! `C(p,0^a,q,0^b) = -Σ_{i<a} binom(a+b-i, b) C(p,0^i,q,0^{a+b-i})`.

use num_complex::Complex64;

use crate::error::{NumError, Result};
use crate::polylog::polylog_sv;

fn binom(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_points(zs: &[Complex64]) -> Result<()> {
    if zs.len() < 2 {
        return Err(NumError::Domain("a correlator needs at least two points".into()));
    }
    if zs.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(NumError::Range("non-finite point".into()));
    }
    if zs.iter().all(|z| *z == zs[0]) {
        return Err(NumError::Domain("all points coincide".into()));
    }
    Ok(())
}

/// `Cor(1, 0^{n-1}, z)` for `n ≥ 2`.
pub fn depth_one(n: u32, z: Complex64) -> Result<f64> {
    let nn = n as u64;
    let mut sum = 0.0;
    let l = z.norm().ln();
    for k in (0..=nn.saturating_sub(2)).step_by(2) {
        let lk = if k == 0 { 1.0 } else if z == Complex64::new(0.0, 0.0) { 0.0 } else { l.powi(k as i32) };
        if lk == 0.0 {
            continue;
        }
        sum += binom(2 * nn - k - 3, nn - 1) * 2f64.powi(k as i32 + 1) / factorial(k + 1)
            * polylog_sv(n - k as u32, z)?
            * lk;
    }
    Ok(-sum / binom(2 * nn - 2, nn - 1))
}

/// `C(p, 0^a, q, 0^b)` with `p, q ≠ 0`.
fn two_letters(p: Complex64, a: usize, q: Complex64, b: usize) -> Result<f64> {
    let n = (a + b + 1) as u32;
    if b == 0 {
        return depth_one(n, q / p);
    }
    if a == 0 {
        return depth_one(n, p / q);
    }
    let mut sum = 0.0;
    for i in 0..a {
        let c = binom((a + b - i) as u64, b as u64);
        sum += c * two_letters(p, i, q, a + b - i)?;
    }
    Ok(-sum)
}

/// Closed-form value of `Cor(z_0, …, z_n)` divided by `(2πi)^{-n}`.
///
/// Fails with [`NumError::NotRepresentable`] when no closed form applies.
pub fn correlator_closed(zs: &[Complex64]) -> Result<f64> {
    check_points(zs)?;
    let n = zs.len() - 1;
    match n {
        1 => Ok((zs[0] - zs[1]).norm().ln()),
        2 => {
            let (z0, z1, z2) = if zs[2] != zs[0] {
                (zs[0], zs[1], zs[2])
            } else {
                (zs[1], zs[2], zs[0])
            };
            polylog_sv(2, (z1 - z0) / (z2 - z0))
        }
        _ => {
            let scale = 1.0 + zs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let snap = 1e-12 * scale;
            let mut tried: Vec<Complex64> = Vec::new();
            for &c in zs {
                if tried.iter().any(|t| (*t - c).norm() <= snap) {
                    continue;
                }
                tried.push(c);
                let shifted: Vec<Complex64> = zs.iter().map(|z| *z - c).collect();
                let nonzero: Vec<usize> = (0..=n).filter(|&i| shifted[i].norm() > snap).collect();
                match nonzero.len() {
                    0 => return Err(NumError::Domain("all points coincide".into())),
                    1 => return Ok(0.0),
                    2 => {
                        let (i, j) = (nonzero[0], nonzero[1]);
                        let a = j - i - 1;
                        let b = n - 1 - a;
                        return two_letters(shifted[i], a, shifted[j], b);
                    }
                    _ => {}
                }
            }
            Err(NumError::NotRepresentable(format!(
                "no closed form for a weight-{n} correlator with more than two distinct nonzero letters after any shift"
            )))
        }
    }
}
