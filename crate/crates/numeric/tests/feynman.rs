use hodgecor_numeric::{
    correlator_closed, dilog_sv, feynman_correlator, polylog_sv, Complex64, Estimator, IntegrationConfig, NumError,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg(samples: u64, seed: u64) -> IntegrationConfig {
    IntegrationConfig { samples, seed, ..Default::default() }
}

#[test]
fn weight_one_needs_no_integral() {
    let e = feynman_correlator(&[c(0.0, 0.0), c(3.0, 4.0)], &cfg(100, 0)).unwrap();
    assert_eq!(e.value, 5f64.ln());
    assert_eq!(e.sigma, 0.0);
}

#[test]
fn weight_two_at_a_right_angle() {
    let e = feynman_correlator(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)], &cfg(200_000, 1)).unwrap();
    let want = dilog_sv(c(0.0, -1.0)).unwrap();
    assert!((e.value - want).abs() <= 3.0 * e.sigma, "{e:?} vs {want}");
    assert!(e.sigma < 5e-3);
}

#[test]
fn weight_three_depth_one() {
    let zs = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 2.0)];
    let e = feynman_correlator(&zs, &cfg(200_000, 2)).unwrap();
    let want = -polylog_sv(3, c(0.0, 2.0)).unwrap();
    assert!((e.value - want).abs() <= 3.0 * e.sigma, "{e:?} vs {want}");
}

#[test]
fn weight_three_interleaved_zeros() {
    // (1, 0, z, 0) is reduced to depth one by the first shuffle
    let zs = [c(1.0, 0.0), c(0.0, 0.0), c(-1.5, 0.5), c(0.0, 0.0)];
    let e = feynman_correlator(&zs, &cfg(200_000, 3)).unwrap();
    let want = correlator_closed(&zs).unwrap();
    assert!((e.value - want).abs() <= 3.0 * e.sigma, "{e:?} vs {want}");
}

#[test]
fn reproducible_for_any_thread_count() {
    let zs = [c(0.2, 0.1), c(1.0, -0.3), c(-0.4, 0.8), c(0.5, 0.5)];
    let conf = IntegrationConfig { samples: 20_000, seed: 99, batches: 8, ..Default::default() };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| feynman_correlator(&zs, &conf).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
    let other = feynman_correlator(&zs, &IntegrationConfig { seed: 100, ..conf.clone() }).unwrap();
    assert_ne!(a.value, other.value);
}

#[test]
fn estimators_agree() {
    let zs = [c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.9)];
    let want = correlator_closed(&zs).unwrap();
    for estimator in [Estimator::MeanOfMeans, Estimator::MedianOfMeans] {
        let e = feynman_correlator(&zs, &IntegrationConfig { estimator, ..cfg(100_000, 4) }).unwrap();
        assert!((e.value - want).abs() <= 3.0 * e.sigma, "{estimator:?}: {e:?} vs {want}");
    }
}

#[test]
fn kernel_scale_does_not_bias() {
    // halving and doubling the kernel scale changes the variance, not the value
    let zs = [c(0.0, 0.0), c(1.0, 0.2), c(-0.5, 1.0)];
    let want = correlator_closed(&zs).unwrap();
    for domain_radius in [0.25, 1.0, 2.0] {
        let e = feynman_correlator(&zs, &IntegrationConfig { domain_radius, ..cfg(100_000, 5) }).unwrap();
        assert!((e.value - want).abs() <= 3.0 * e.sigma, "radius {domain_radius}: {e:?} vs {want}");
    }
}

#[test]
fn configuration_and_domain_errors() {
    let zs = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
    let bad = IntegrationConfig { samples: 4, batches: 8, ..Default::default() };
    assert!(matches!(feynman_correlator(&zs, &bad), Err(NumError::Config(_))));
    let bad = IntegrationConfig { batches: 0, ..Default::default() };
    assert!(matches!(feynman_correlator(&zs, &bad), Err(NumError::Config(_))));
    let bad = IntegrationConfig { domain_radius: -1.0, ..Default::default() };
    assert!(matches!(feynman_correlator(&zs, &bad), Err(NumError::Config(_))));
    let same = [c(1.0, 1.0); 4];
    assert!(matches!(feynman_correlator(&same, &cfg(1000, 0)), Err(NumError::Domain(_))));
    let w4 = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0), c(2.0, 0.0)];
    assert!(matches!(feynman_correlator(&w4, &cfg(1000, 0)), Err(NumError::Unsupported(_))));
}
