use std::f64::consts::{LN_2, PI};

use hodgecor_core::rational::qf;
use hodgecor_numeric::polylog::{beta_exact, zeta};
use hodgecor_numeric::{dilog_sv, li_n, multi_li, polylog_sv, Complex64, NumError};
use hodgecor_core::enumerate_quasishuffles;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CATALAN: f64 = 0.915_965_594_177_219_1;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain partial sums, long enough for the requested accuracy.
fn series_oracle(n: u32, z: Complex64, terms: usize) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut p = c(1.0, 0.0);
    for k in 1..=terms {
        p *= z;
        sum += p / (k as f64).powi(n as i32);
    }
    sum
}

fn random_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen::<f64>() * 2.0 * PI)
}

#[test]
fn low_order_values() {
    assert!((li_n(1, c(0.5, 0.0)).unwrap().re - LN_2).abs() < 1e-15);
    let li2 = li_n(2, c(0.5, 0.0)).unwrap();
    assert!((li2.re - (PI * PI / 12.0 - LN_2 * LN_2 / 2.0)).abs() < 1e-15);
    assert!((li2 - series_oracle(2, c(0.5, 0.0), 1_000_000)).norm() < 1e-15);
    for n in 1..6 {
        assert_eq!(li_n(n, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }
    assert!((li_n(3, c(1.0, 0.0)).unwrap().re - 1.202_056_903_159_594_2).abs() < 1e-15);
    assert!((li_n(2, c(-1.0, 0.0)).unwrap().re + PI * PI / 12.0).abs() < 1e-15);
}

#[test]
fn li1_outside_the_disc_is_a_domain_error() {
    assert!(matches!(li_n(1, c(1.0, 0.0)), Err(NumError::Domain(_))));
    assert!(matches!(li_n(1, c(0.0, -2.0)), Err(NumError::Domain(_))));
    assert!(matches!(li_n(0, c(0.1, 0.0)), Err(NumError::Domain(_))));
}

#[test]
fn relative_accuracy_inside_the_disc() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let z = random_disc(&mut rng, 0.99);
        for n in 1..=5 {
            let got = li_n(n, z).unwrap();
            let want = series_oracle(n, z, 6000);
            assert!((got - want).norm() <= 1e-13 * want.norm().max(1e-300), "n={n} z={z}: {got} vs {want}");
        }
    }
}

#[test]
fn inversion_outside_the_disc() {
    // Li_2(z) + Li_2(1/z) = -π²/6 - ½ log²(-z)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let z = random_disc(&mut rng, 0.95).inv();
        if z.norm() <= 1.0 || z.im.abs() < 1e-9 {
            continue;
        }
        let lhs = li_n(2, z).unwrap() + li_n(2, z.inv()).unwrap();
        let rhs = -PI * PI / 6.0 - 0.5 * (-z).ln().powu(2);
        assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()), "z={z}");
    }
}

#[test]
fn zeta_at_small_integers() {
    assert!((zeta(2) - PI.powi(2) / 6.0).abs() < 1e-15);
    assert!((zeta(3) - 1.202_056_903_159_594_2).abs() < 1e-15);
    assert!((zeta(6) - PI.powi(6) / 945.0).abs() < 1e-15);
}

#[test]
fn bloch_wigner_special_values() {
    assert!((dilog_sv(c(0.0, 1.0)).unwrap() - CATALAN).abs() < 1e-14);
    // maximum of the Bloch–Wigner function, at e^{iπ/3}
    let top = dilog_sv(Complex64::from_polar(1.0, PI / 3.0)).unwrap();
    assert!((top - 1.014_941_606_409_653_6).abs() < 1e-14);
    assert_eq!(dilog_sv(c(0.0, 0.0)).unwrap(), 0.0);
    assert_eq!(dilog_sv(c(1.0, 0.0)).unwrap(), 0.0);
    assert!(matches!(dilog_sv(c(1e308, 1e308)), Err(NumError::Range(_))));
}

#[test]
fn bloch_wigner_oracle_and_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let d = dilog_sv(z).unwrap();
        assert!((d + dilog_sv(z.inv()).unwrap()).abs() < 1e-12, "z={z}");
        assert!((d + dilog_sv(c(1.0, 0.0) - z).unwrap()).abs() < 1e-12, "z={z}");
        assert!((d + dilog_sv(z.conj()).unwrap()).abs() < 1e-12, "z={z}");
    }
    for _ in 0..200 {
        let z = random_disc(&mut rng, 0.4);
        let want = series_oracle(2, z, 200).im + z.norm().ln() * (c(1.0, 0.0) - z).arg();
        assert!((dilog_sv(z).unwrap() - want).abs() < 1e-14);
    }
    for x in [-7.5, -1.0, -0.2, 0.3, 0.999, 2.0, 40.0] {
        assert!(dilog_sv(c(x, 0.0)).unwrap().abs() < 1e-15, "x={x}");
    }
}

#[test]
fn beta_coefficients() {
    // 2x/(e^{2x}-1) = 1 - x + x²/3 - x⁴/45 + …
    assert_eq!(beta_exact(0), qf(1, 1));
    assert_eq!(beta_exact(1), qf(-1, 1));
    assert_eq!(beta_exact(2), qf(1, 3));
    assert_eq!(beta_exact(3), qf(0, 1));
    assert_eq!(beta_exact(4), qf(-1, 45));
}

#[test]
fn single_valued_weight_two_is_bloch_wigner() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        assert!((polylog_sv(2, z).unwrap() - dilog_sv(z).unwrap()).abs() < 1e-12);
    }
    assert_eq!(polylog_sv(3, c(0.0, 0.0)).unwrap(), 0.0);
    assert!(matches!(polylog_sv(1, c(0.5, 0.0)), Err(NumError::Domain(_))));
}

fn l3_with(beta2: f64, z: Complex64) -> f64 {
    let l = z.norm().ln();
    (series_oracle(3, z, 400) - l * series_oracle(2, z, 400) + beta2 * l * l * series_oracle(1, z, 400)).re
}

#[test]
fn weight_three_on_the_real_segment() {
    for x in [0.05, 0.2, 0.37, 0.5] {
        let z = c(x, 0.0);
        assert!((polylog_sv(3, z).unwrap() - l3_with(1.0 / 3.0, z)).abs() < 1e-14, "x={x}");
    }
}

#[test]
fn the_three_term_identity_fixes_the_quadratic_coefficient() {
    // 𝓛_3(x) + 𝓛_3(1-x) + 𝓛_3(1-1/x) = ζ(3); the points stay inside |z| ≤ 1/2 or are inverted.
    let sv = |beta2: f64, z: Complex64| -> f64 {
        if z.norm() <= 1.0 {
            l3_with(beta2, z)
        } else {
            l3_with(beta2, z.inv())
        }
    };
    let x = c(0.3, 0.35);
    let sum = |b: f64| sv(b, x) + sv(b, c(1.0, 0.0) - x) + sv(b, c(1.0, 0.0) - x.inv()) - zeta(3);
    assert!(sum(1.0 / 3.0).abs() < 1e-6);
    assert!(sum(2.0 / 3.0).abs() > 1e-3);
    let lib = polylog_sv(3, x).unwrap() + polylog_sv(3, c(1.0, 0.0) - x).unwrap()
        + polylog_sv(3, c(1.0, 0.0) - x.inv()).unwrap();
    assert!((lib - zeta(3)).abs() < 1e-12);
}

#[test]
fn odd_and_even_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        for n in 2..6u32 {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let a = polylog_sv(n, z).unwrap();
            let b = polylog_sv(n, z.inv()).unwrap();
            assert!((a - sign * b).abs() < 1e-12);
            let conj = polylog_sv(n, z.conj()).unwrap();
            assert!((a - sign * conj).abs() < 1e-12, "n={n} z={z}");
        }
    }
}

fn nested_oracle(ns: &[u32], zs: &[Complex64], kmax: usize) -> Complex64 {
    fn go(ns: &[u32], zs: &[Complex64], lo: usize, kmax: usize) -> Complex64 {
        if ns.is_empty() {
            return c(1.0, 0.0);
        }
        let mut s = c(0.0, 0.0);
        for k in lo..=kmax {
            s += zs[0].powu(k as u32) / (k as f64).powi(ns[0] as i32) * go(&ns[1..], &zs[1..], k + 1, kmax);
        }
        s
    }
    go(ns, zs, 1, kmax)
}

#[test]
fn multi_li_matches_nested_sums() {
    let ns = [1, 2];
    let zs = [c(0.3, 0.1), c(-0.2, 0.25)];
    let got = multi_li(&ns, &zs).unwrap();
    let want = nested_oracle(&ns, &zs, 60);
    assert!((got.value - want).norm() < 1e-14);
    assert!(got.tail_bound < 1e-15);
    let zero = multi_li(&[2, 1], &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
    assert_eq!(zero.value, c(0.0, 0.0));
    assert!(matches!(multi_li(&[1], &[c(1.0, 0.0)]), Err(NumError::Domain(_))));
    assert!(matches!(multi_li(&[1, 0], &[c(0.1, 0.0), c(0.1, 0.0)]), Err(NumError::Domain(_))));
}

#[test]
fn two_factor_product() {
    let (x, y) = (c(0.31, -0.2), c(-0.15, 0.33));
    let lhs = li_n(2, x).unwrap() * li_n(1, y).unwrap();
    let rhs = multi_li(&[2, 1], &[x, y]).unwrap().value
        + multi_li(&[1, 2], &[y, x]).unwrap().value
        + multi_li(&[3], &[x * y]).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-14);
}

/// `Li_a(x) Li_b(y)` minus the quasishuffle expansion.
pub fn quasishuffle_residual(na: &[u32], za: &[Complex64], nb: &[u32], zb: &[Complex64]) -> f64 {
    let lhs = multi_li(na, za).unwrap().value * multi_li(nb, zb).unwrap().value;
    let ns: Vec<u32> = na.iter().chain(nb).copied().collect();
    let zs: Vec<Complex64> = za.iter().chain(zb).copied().collect();
    let mut rhs = c(0.0, 0.0);
    for q in enumerate_quasishuffles(na.len(), nb.len()) {
        let fibers = q.fibers();
        let n: Vec<u32> = fibers.iter().map(|f| f.iter().map(|&i| ns[i]).sum()).collect();
        let z: Vec<Complex64> = fibers.iter().map(|f| f.iter().map(|&i| zs[i]).product()).collect();
        rhs += multi_li(&n, &z).unwrap().value;
    }
    (lhs - rhs).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn quasishuffle_products(
        split in prop_oneof![Just((1usize, 1usize)), Just((1, 2)), Just((2, 1))],
        ns in prop::collection::vec(1u32..4, 3),
        rs in prop::collection::vec(0.0f64..0.4, 3),
        ths in prop::collection::vec(0.0f64..std::f64::consts::TAU, 3),
    ) {
        let zs: Vec<Complex64> = rs.iter().zip(&ths).map(|(r, t)| Complex64::from_polar(*r, *t)).collect();
        let (r, s) = split;
        let res = quasishuffle_residual(&ns[..r], &zs[..r], &ns[r..r + s], &zs[r..r + s]);
        prop_assert!(res <= 1e-10, "residual {res}");
    }
}
