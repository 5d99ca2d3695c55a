//! The acceptance matrix: thirteen checks with pinned sizes and tolerances.
//!
//! Every check draws its random inputs from a ChaCha8 stream keyed by the
//! suite seed and the criterion number, so reports are reproducible.

use std::collections::BTreeSet;
use std::time::Instant;

use hodgecor_core::coideal::{verify_coideal, CoidealOptions, Family, WeightReport};
use hodgecor_core::genfun::{
    check_multiset_identity, duality_residual, genfun_coproduct_residual, lambda_star, multiset_identity_residual,
    shift_difference, singleton_slots, SpanCache, SCALING_ONLY,
};
use hodgecor_core::relations::{dilog_base_case, RelationKind};
use hodgecor_core::scaling::wedge_normal_form;
use hodgecor_core::{
    cojacobi_defect, coproduct, enumerate_quasishuffles, make_word, quasishuffle_count, GroupElement, GroupSpec,
    LinComb,
};
use hodgecor_numeric::check::CLOSED_TOLERANCE;
use hodgecor_numeric::{
    check_named, correlator_closed, feynman_correlator, li_n, multi_li, polylog_sv, Complex64, ComplexVal,
    IntegrationConfig, Method, NamedRelation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{control_mutation, weight_reports_json};

pub const COJACOBI_WORDS: usize = 500;
pub const FIVE_TERM_POINTS: usize = 200;
pub const FIVE_TERM_TOL: f64 = 1e-10;
pub const W2_INSTANCES: usize = 100;
pub const W2_REQUIRED: usize = 95;
pub const W2_MEDIAN_SIGMA: f64 = 5e-3;
pub const W3_INSTANCES: usize = 20;
pub const SIGMAS: f64 = 3.0;
pub const GR2729_POINTS: usize = 100;
pub const GR28_POINTS: usize = 50;
pub const MULTI_LI_INSTANCES: usize = 100;
pub const MULTI_LI_TOL: f64 = 1e-10;
pub const MULTI_LI_RADIUS: f64 = 0.4;
pub const DISTRIBUTION_POINTS: usize = 100;
pub const DISTRIBUTION_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Monte Carlo samples per correlator.
    pub samples: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 2024, samples: 1_000_000 }
    }
}

impl SuiteConfig {
    fn rng(&self, criterion: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(criterion as u64);
        rng
    }

    fn integration(&self, seed: u64) -> IntegrationConfig {
        IntegrationConfig { samples: self.samples, seed, ..IntegrationConfig::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: Value,
    #[serde(skip)]
    pub timing: Value,
}

impl Criterion {
    /// One line for logs: `[PASS] 6 five-term relation: {...}`.
    pub fn line(&self) -> String {
        format!("[{}] {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.details)
    }
}

pub const NAMES: [&str; 13] = [
    "co-Jacobi identity",
    "dilogarithm base-case identity",
    "coideal certificate",
    "first-shuffle coideal",
    "quasishuffle counts",
    "five-term relation",
    "weight-2 Feynman integral vs closed form",
    "depth-1 weight-3 Feynman integral vs closed form",
    "weight-3 relations gr27 and gr29",
    "lower-depth reduction in weight 3",
    "multiple polylogarithm quasishuffle products",
    "generating function identities",
    "weight-1 distribution relation",
];

pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Criterion {
    let start = Instant::now();
    let (pass, details, timing) = match id {
        1 => cojacobi(cfg),
        2 => base_case(),
        3 => coideal(Family::Full),
        4 => coideal(Family::FirstShuffle),
        5 => quasishuffles(),
        6 => five_term(cfg),
        7 => weight_two_mc(cfg),
        8 => weight_three_mc(cfg),
        9 => gr2729(cfg),
        10 => gr28(cfg),
        11 => multi_li_products(cfg),
        12 => genfun(cfg),
        13 => distribution(cfg),
        _ => (false, json!({"error": format!("no criterion {id}")}), json!(null)),
    };
    let mut timing = if timing.is_null() { json!({}) } else { timing };
    timing["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    Criterion { id, name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), pass, details, timing }
}

/// Runs the selected criteria (all when `only` is empty).
pub fn run_suite(cfg: &SuiteConfig, only: &[usize]) -> Vec<Criterion> {
    (1..=13).filter(|i| only.is_empty() || only.contains(i)).map(|i| run_criterion(i, cfg)).collect()
}

type Checked = (bool, Value, Value);

fn random_c(rng: &mut ChaCha8Rng, half_width: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-half_width..half_width), rng.gen_range(-half_width..half_width))
}

fn cojacobi(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(1);
    let mu6 = GroupSpec::mu(6).expect("μ_6");
    let free = GroupSpec::free(&["a", "b", "c"]).expect("free group");
    let mut zero = 0;
    let mut max_weight = 0;
    for i in 0..COJACOBI_WORDS {
        let len = rng.gen_range(2..=7);
        let letters: Vec<GroupElement> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    return GroupElement::Zero;
                }
                if i % 2 == 0 {
                    mu6.root(rng.gen_range(0..6)).expect("root")
                } else {
                    let a = free.symbol("a", rng.gen_range(-2..=2)).expect("a");
                    let b = free.symbol("b", rng.gen_range(-2..=2)).expect("b");
                    let c = free.symbol("c", rng.gen_range(-1..=1)).expect("c");
                    a.mul(&b).and_then(|x| x.mul(&c)).expect("product")
                }
            })
            .collect();
        let w = make_word(&letters).expect("word");
        max_weight = max_weight.max(w.weight());
        if cojacobi_defect(&LinComb::from_word(w)).is_zero() {
            zero += 1;
        }
    }
    (zero == COJACOBI_WORDS, json!({"words": COJACOBI_WORDS, "zero_defects": zero, "max_weight": max_weight}), json!(null))
}

fn base_case() -> Checked {
    let g = GroupSpec::free(&["a", "b", "c"]).expect("free group");
    let s = |name: &str, e: i64| g.symbol(name, e).expect("symbol");
    let pairs = [
        (s("a", 1), s("b", 1)),
        (s("a", 1).mul(&s("c", -1)).expect("mul"), s("b", 2)),
        (s("c", 1), s("a", 1).mul(&s("b", 1)).expect("mul")),
    ];
    let mut rows = Vec::new();
    let mut pass = true;
    for (a, b) in &pairs {
        let rel = dilog_base_case(a, b).expect("base case");
        let raw = coproduct(&rel.value);
        let reduced = wedge_normal_form(&raw);
        pass &= !raw.is_zero() && reduced.is_zero();
        rows.push(json!({"a": a.to_string(), "b": b.to_string(), "raw_pairs": raw.len(), "reduced_pairs": reduced.len()}));
    }
    (pass, json!({"cases": rows}), json!(null))
}

fn coideal_run(n: u32, max_weight: usize, family: Family, mutate: bool) -> Result<Vec<WeightReport>, String> {
    let spec = GroupSpec::mu(n).map_err(|e| e.to_string())?;
    let mut opts = CoidealOptions::new(max_weight);
    opts.family = family;
    if mutate {
        opts.mutation = Some(control_mutation());
    }
    verify_coideal(&spec, &opts).map_err(|e| e.to_string())
}

fn coideal(family: Family) -> Checked {
    let mut details = json!({});
    let mut timing = json!({});
    let mut pass = true;
    for (n, w) in [(1u32, 5usize), (2, 4)] {
        match coideal_run(n, w, family, false) {
            Ok(reports) => {
                pass &= reports.iter().all(|r| r.contained);
                let (rows, times) = weight_reports_json(&reports);
                details[format!("mu_{n}")] = rows;
                timing[format!("mu_{n}")] = times;
            }
            Err(e) => {
                pass = false;
                details[format!("mu_{n}")] = json!({"error": e});
            }
        }
    }
    if family == Family::Full {
        match coideal_run(2, 4, family, true) {
            Ok(reports) => {
                let failed = reports.iter().find(|r| !r.contained);
                let detected = failed.map(|r| r.witness.is_some()).unwrap_or(false);
                pass &= detected;
                details["mutation_control"] = json!({
                    "detected": detected,
                    "failing_weight": failed.map(|r| r.weight),
                    "witness_kind": failed.and_then(|r| r.witness.as_ref()).map(|w| w.kind.clone()),
                });
            }
            Err(e) => {
                pass = false;
                details["mutation_control"] = json!({"error": e});
            }
        }
    }
    (pass, details, timing)
}

/// Quasishuffles as pairs of subsets covering `0..m`: an enumeration independent of the library's.
fn surjection_oracle(r: usize, s: usize) -> BTreeSet<Vec<usize>> {
    let subsets = |m: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << m)
            .filter(|b| b.count_ones() as usize == k)
            .map(|b| (0..m).filter(|i| b >> i & 1 == 1).collect())
            .collect()
    };
    let mut out = BTreeSet::new();
    for m in r.max(s)..=r + s {
        for a in subsets(m, r) {
            for b in subsets(m, s) {
                if (0..m).all(|i| a.contains(&i) || b.contains(&i)) {
                    out.insert(a.iter().chain(&b).copied().collect());
                }
            }
        }
    }
    out
}

fn quasishuffles() -> Checked {
    let small = [(1usize, 1usize, 3usize), (2, 1, 5)];
    let mut pass = true;
    let mut examples = Vec::new();
    for (r, s, want) in small {
        let got = enumerate_quasishuffles(r, s).len();
        pass &= got == want;
        examples.push(json!({"r": r, "s": s, "count": got, "expected": want}));
    }
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for r in 1..=7 {
        for s in 1..=(8 - r) {
            let listed: BTreeSet<Vec<usize>> = enumerate_quasishuffles(r, s).into_iter().map(|q| q.assignment).collect();
            let oracle = surjection_oracle(r, s);
            let count_ok = quasishuffle_count(r, s) == oracle.len().into();
            if listed != oracle || !count_ok {
                mismatches.push(json!([r, s]));
            }
            checked += 1;
        }
    }
    pass &= mismatches.is_empty();
    (pass, json!({"examples": examples, "pairs_checked": checked, "mismatches": mismatches}), json!(null))
}

fn five_term(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(6);
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    let ic = cfg.integration(0);
    for _ in 0..FIVE_TERM_POINTS {
        let (w1, w2) = (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0));
        match check_named(&NamedRelation::FiveTerm { w1: w1.into(), w2: w2.into() }, Method::Closed, &ic) {
            Ok(r) => worst = worst.max(r.residual),
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0 && worst <= FIVE_TERM_TOL;
    (pass, json!({"points": FIVE_TERM_POINTS, "max_residual": worst, "tolerance": FIVE_TERM_TOL, "errors": errors}), json!(null))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn weight_two_mc(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(7);
    let mut within = 0;
    let mut sigmas = Vec::new();
    let mut worst_z: f64 = 0.0;
    for k in 0..W2_INSTANCES {
        let zs: Vec<Complex64> = (0..3).map(|_| random_c(&mut rng, 2.0)).collect();
        let closed = correlator_closed(&zs).expect("weight 2 has a closed form");
        let est = feynman_correlator(&zs, &cfg.integration(cfg.seed.wrapping_add(k as u64)));
        if let Ok(e) = est {
            let z = (e.value - closed).abs() / e.sigma;
            worst_z = worst_z.max(z);
            if z <= SIGMAS {
                within += 1;
            }
            sigmas.push(e.sigma);
        }
    }
    let med = median(sigmas);
    let pass = within >= W2_REQUIRED && med <= W2_MEDIAN_SIGMA;
    (
        pass,
        json!({
            "instances": W2_INSTANCES, "samples": cfg.samples, "within_3_sigma": within, "required": W2_REQUIRED,
            "median_sigma": med, "sigma_bound": W2_MEDIAN_SIGMA, "max_deviation_in_sigma": worst_z,
        }),
        json!(null),
    )
}

fn weight_three_mc(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(8);
    let mut within = 0;
    let mut rows = Vec::new();
    let mut sigmas = Vec::new();
    for k in 0..W3_INSTANCES {
        let z = random_c(&mut rng, 2.0);
        let zs = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), z];
        let closed = -polylog_sv(3, z).expect("𝓛_3");
        match feynman_correlator(&zs, &cfg.integration(cfg.seed.wrapping_add(1000 + k as u64))) {
            Ok(e) => {
                let dev = (e.value - closed).abs() / e.sigma;
                if dev <= SIGMAS {
                    within += 1;
                }
                sigmas.push(e.sigma);
                rows.push(json!({"z": ComplexVal::from(z), "mc": e.value, "sigma": e.sigma, "closed": closed, "deviation_in_sigma": dev}));
            }
            Err(err) => rows.push(json!({"z": ComplexVal::from(z), "error": err.to_string()})),
        }
    }
    (
        within == W3_INSTANCES,
        json!({"instances": W3_INSTANCES, "samples": cfg.samples, "within_3_sigma": within, "median_sigma": median(sigmas), "rows": rows}),
        json!(null),
    )
}

fn gr2729(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(9);
    let ic = cfg.integration(0);
    let (mut w27, mut w29): (f64, f64) = (0.0, 0.0);
    let mut errors = 0;
    for _ in 0..GR2729_POINTS {
        let (x, y) = (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0));
        match check_named(&NamedRelation::Gr27 { x: x.into() }, Method::Closed, &ic) {
            Ok(r) => w27 = w27.max(r.residual),
            Err(_) => errors += 1,
        }
        match check_named(&NamedRelation::Gr29Reduced { x: x.into(), y: y.into() }, Method::Closed, &ic) {
            Ok(r) => w29 = w29.max(r.residual),
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0 && w27 <= CLOSED_TOLERANCE && w29 <= CLOSED_TOLERANCE;
    (
        pass,
        json!({"points": GR2729_POINTS, "max_residual_gr27": w27, "max_residual_gr29": w29, "tolerance": CLOSED_TOLERANCE, "errors": errors}),
        json!(null),
    )
}

fn gr28(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(10);
    let mut closed_worst: f64 = 0.0;
    let mut closed_ok = 0;
    let mut mc_ok = 0;
    let mut mc_worst: f64 = 0.0;
    let mut errors = 0;
    let ic = cfg.integration(0);
    for k in 0..GR28_POINTS {
        let z1 = random_c(&mut rng, 2.0);
        let (z2, z3) = (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0));
        // a repeated letter gives the left side a closed form
        let degenerate = if k % 2 == 0 { vec![z1, z1, z3] } else { vec![z1, z2, z1] };
        let as_vals = |v: &[Complex64]| v.iter().map(|&z| ComplexVal::from(z)).collect::<Vec<_>>();
        match check_named(&NamedRelation::Gr28 { zs: as_vals(&degenerate) }, Method::Closed, &ic) {
            Ok(r) => {
                closed_worst = closed_worst.max(r.residual);
                closed_ok += usize::from(r.residual <= CLOSED_TOLERANCE);
            }
            Err(_) => errors += 1,
        }
        let generic = IntegrationConfig { seed: cfg.seed.wrapping_add(2000 + 16 * k as u64), ..ic.clone() };
        match check_named(&NamedRelation::Gr28 { zs: as_vals(&[z1, z2, z3]) }, Method::Auto, &generic) {
            Ok(r) => {
                let stat = r.statistical_error.unwrap_or(0.0);
                mc_worst = mc_worst.max(r.residual / (stat / SIGMAS));
                mc_ok += usize::from(r.pass);
            }
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0 && closed_ok == GR28_POINTS && mc_ok == GR28_POINTS;
    (
        pass,
        json!({
            "points": GR28_POINTS, "closed_form_points_passing": closed_ok, "closed_form_max_residual": closed_worst,
            "tolerance": CLOSED_TOLERANCE, "monte_carlo_points_within_3_sigma": mc_ok,
            "monte_carlo_max_deviation_in_sigma": mc_worst, "samples": cfg.samples, "errors": errors,
        }),
        json!(null),
    )
}

fn multi_li_products(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(11);
    let mut worst: f64 = 0.0;
    let splits = [(1usize, 1usize), (1, 2), (2, 1)];
    for i in 0..MULTI_LI_INSTANCES {
        let (r, s) = splits[i % 3];
        let ns: Vec<u32> = (0..r + s).map(|_| rng.gen_range(1..=3)).collect();
        let zs: Vec<Complex64> = (0..r + s)
            .map(|_| Complex64::from_polar(MULTI_LI_RADIUS * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * std::f64::consts::TAU))
            .collect();
        let lhs = multi_li(&ns[..r], &zs[..r]).expect("series").value * multi_li(&ns[r..], &zs[r..]).expect("series").value;
        let mut rhs = Complex64::new(0.0, 0.0);
        for q in enumerate_quasishuffles(r, s) {
            let fibers = q.fibers();
            let n: Vec<u32> = fibers.iter().map(|f| f.iter().map(|&j| ns[j]).sum()).collect();
            let z: Vec<Complex64> = fibers.iter().map(|f| f.iter().map(|&j| zs[j]).product()).collect();
            rhs += multi_li(&n, &z).expect("series").value;
        }
        worst = worst.max((lhs - rhs).norm());
    }
    // depth one against the classical evaluator
    let z = Complex64::new(0.3, -0.2);
    let depth_one = (multi_li(&[3], &[z]).expect("series").value - li_n(3, z).expect("Li_3")).norm();
    let pass = worst <= MULTI_LI_TOL && depth_one <= MULTI_LI_TOL;
    (
        pass,
        json!({"instances": MULTI_LI_INSTANCES, "max_residual": worst, "depth_one_residual": depth_one, "tolerance": MULTI_LI_TOL}),
        json!(null),
    )
}

/// `k + 1` elements of `μ_2` with product 1.
fn mu2_segments(g: &GroupSpec, k: usize, rng: &mut ChaCha8Rng) -> Vec<GroupElement> {
    let mut ws: Vec<GroupElement> = (0..k).map(|_| g.root(rng.gen_range(0..2)).expect("root")).collect();
    let mut p = g.identity();
    for w in &ws {
        p = p.mul(w).expect("mul");
    }
    ws.insert(0, p.inverse().expect("inverse"));
    ws
}

fn genfun(cfg: &SuiteConfig) -> Checked {
    const MAX_WEIGHT: usize = 5;
    let g = GroupSpec::mu(2).expect("μ_2");
    let mut rng = cfg.rng(12);
    let names = |k: usize| (0..=k).map(|i| format!("t{i}")).collect::<Vec<_>>();
    let mut multiset = (0, 0);
    let mut duality = (0, 0);
    let mut shift = (0, 0);
    let mut coproduct_ok = (0, 0);
    let mut flip_detected = true;
    let mut errors = Vec::new();
    for k in 1..=3usize {
        for variant in 0..2 {
            let ws = mu2_segments(&g, k, &mut rng);
            let seg = rng.gen_range(0..=k);
            let mut slots: Vec<Vec<String>> = (0..=k).map(|i| vec![format!("s{i}")]).collect();
            if variant == 0 {
                slots[seg].clear();
            }
            let max = (MAX_WEIGHT - k) as u32 - variant as u32;
            match check_multiset_identity(&ws, &slots, seg, "t", "u", max) {
                Ok(ok) => {
                    multiset.0 += usize::from(ok);
                    multiset.1 += 1;
                }
                Err(e) => errors.push(e.to_string()),
            }
            if let Ok(flip) = multiset_identity_residual(&ws, &slots, seg, "t", "u", max, -1) {
                flip_detected &= !flip.is_zero();
            }
        }
    }
    for k in 1..=4usize {
        let ws = mu2_segments(&g, k, &mut rng);
        let ts = names(k);
        let tr: Vec<&str> = ts.iter().map(|s| s.as_str()).collect();
        match duality_residual(&ws, &tr, (MAX_WEIGHT - k) as u32) {
            Ok(r) => {
                duality.0 += usize::from(r.is_zero());
                duality.1 += 1;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let mut fs = SpanCache::new(&g, &[RelationKind::FirstShuffle]);
    let mut scaling = SpanCache::new(&g, &SCALING_ONLY);
    for k in 1..=3usize {
        let ws = mu2_segments(&g, k, &mut rng);
        let ts = names(k);
        let tr: Vec<&str> = ts.iter().map(|s| s.as_str()).collect();
        match shift_difference(&ws, &tr, "t", (MAX_WEIGHT - k) as u32) {
            Ok(d) => {
                let inside = fs.contains_all(&d).unwrap_or(false);
                let not_scaling = d.is_zero() || !scaling.contains_all(&d).unwrap_or(true);
                shift.0 += usize::from(inside && not_scaling);
                shift.1 += 1;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    for k in 2..=4usize {
        let ws = mu2_segments(&g, k, &mut rng);
        let ts = names(k);
        let slots = singleton_slots(&ts.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        match lambda_star(&ws, &slots, (MAX_WEIGHT - k - 1) as u32).and_then(|f| genfun_coproduct_residual(&f)) {
            Ok(r) => {
                coproduct_ok.0 += usize::from(r.is_zero());
                coproduct_ok.1 += 1;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let all = |p: (usize, usize)| p.0 == p.1 && p.1 > 0;
    let pass = errors.is_empty() && all(multiset) && all(duality) && all(shift) && all(coproduct_ok) && flip_detected;
    (
        pass,
        json!({
            "group": "mu_2", "max_weight": MAX_WEIGHT,
            "multiset_identity": [multiset.0, multiset.1], "sign_flip_detected": flip_detected,
            "duality": [duality.0, duality.1], "shift_in_first_shuffle_span": [shift.0, shift.1],
            "coproduct": [coproduct_ok.0, coproduct_ok.1], "errors": errors,
        }),
        json!(null),
    )
}

fn distribution(cfg: &SuiteConfig) -> Checked {
    let mut rng = cfg.rng(13);
    let ic = cfg.integration(0);
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for _ in 0..DISTRIBUTION_POINTS {
        let (x, y) = (random_c(&mut rng, 3.0), random_c(&mut rng, 3.0));
        match check_named(&NamedRelation::DistributionW1 { x: x.into(), y: y.into() }, Method::Closed, &ic) {
            Ok(r) => worst = worst.max(r.residual),
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0 && worst <= DISTRIBUTION_TOL;
    (pass, json!({"points": DISTRIBUTION_POINTS, "max_residual": worst, "tolerance": DISTRIBUTION_TOL, "errors": errors}), json!(null))
}
