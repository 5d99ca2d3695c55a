use hodgecor_core::genfun::*;
use hodgecor_core::relations::{first_shuffle, second_shuffle, RelationKind};
use hodgecor_core::scaling::scaling_normal_form;
use hodgecor_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z() -> GroupElement {
    GroupElement::Zero
}

/// `k + 1` random elements of `μ_n` with product 1.
fn random_segments(g: &GroupSpec, n: i64, k: usize, rng: &mut ChaCha8Rng) -> Vec<GroupElement> {
    let mut ws: Vec<GroupElement> = (0..k).map(|_| g.root(rng.gen_range(0..n)).unwrap()).collect();
    let mut p = g.identity();
    for w in &ws {
        p = p.mul(w).unwrap();
    }
    ws.insert(0, p.inverse().unwrap());
    ws
}

fn names(k: usize) -> Vec<String> {
    (0..=k).map(|i| format!("t{i}")).collect()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

#[test]
fn lambda_star_coefficients() {
    let g = GroupSpec::mu(6).unwrap();
    let ws = vec![g.root(5).unwrap(), g.root(1).unwrap()];
    let f = lambda_star(&ws, &singleton_slots(&["t0", "t1"]), 3).unwrap();
    let s0 = StarWord::new(vec![(ws[0].clone(), 0), (ws[1].clone(), 0)]).unwrap();
    assert_eq!(f.coeff(&[]), LinComb::from_word(star_to_word(&s0).unwrap()));
    // {t, u} on one segment: t¹u⁰ inserts 1 + 1 + 0 zeros
    let f = lambda_star(&ws, &[vec!["t".into(), "u".into()], vec!["v".into()]], 3).unwrap();
    let s = StarWord::new(vec![(ws[0].clone(), 2), (ws[1].clone(), 0)]).unwrap();
    assert_eq!(f.coeff(&[("t", 1)]), LinComb::from_word(star_to_word(&s).unwrap()));
    assert_eq!(f.coeff(&[("u", 1)]), f.coeff(&[("t", 1)]));
    // k = 0: t^n ↦ C(0^n, 1)
    let f = lambda_star(&[g.identity()], &singleton_slots(&["t"]), 4).unwrap();
    for n in 0..=4u32 {
        let mut letters = vec![z(); n as usize];
        letters.push(g.identity());
        assert_eq!(f.coeff(&[("t", n)]), LinComb::from_word(make_word(&letters).unwrap()));
    }
    assert!(f.coeffs.keys().all(|e| e.iter().sum::<u32>() <= 4));
    let bad = vec![g.root(1).unwrap(), g.root(1).unwrap()];
    assert!(matches!(lambda_star(&bad, &singleton_slots(&["a", "b"]), 1), Err(Error::Domain(_))));
}

#[test]
fn multiset_order_does_not_matter() {
    let g = GroupSpec::mu(6).unwrap();
    let ws = vec![g.root(2).unwrap(), g.root(3).unwrap(), g.root(1).unwrap()];
    let a = lambda_star(&ws, &[vec!["t".into(), "u".into(), "v".into()], vec!["x".into()], vec!["y".into()]], 3).unwrap();
    let b = lambda_star(&ws, &[vec!["v".into(), "t".into(), "u".into()], vec!["x".into()], vec!["y".into()]], 3).unwrap();
    assert_eq!(a.with_variables(&b.variables).coeffs, b.coeffs);
}

#[test]
fn multiset_identity_holds_and_detects_a_flip() {
    let g = GroupSpec::mu(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..12 {
        let k = 1 + trial % 3;
        let ws = random_segments(&g, 6, k, &mut rng);
        let seg = rng.gen_range(0..=k);
        let mut slots: Vec<Vec<String>> = (0..=k).map(|i| vec![format!("s{i}")]).collect();
        if trial % 2 == 0 {
            slots[seg].clear();
        }
        // weight ≤ 5 = k + total zeros
        let max = (5 - k) as u32 - u32::from(trial % 2 == 1);
        assert!(check_multiset_identity(&ws, &slots, seg, "t", "u", max).unwrap());
        let flipped = multiset_identity_residual(&ws, &slots, seg, "t", "u", max, -1).unwrap();
        assert!(!flipped.is_zero());
    }
    let ws = vec![g.root(1).unwrap(), g.root(5).unwrap()];
    let slots = vec![vec![], vec!["x".to_string()]];
    let r = multiset_identity_residual(&ws, &slots, 0, "t", "t", 3, -1).unwrap();
    assert!(r.is_zero());
}

#[test]
fn dual_function_with_one_point() {
    let g = GroupSpec::mu(3).unwrap();
    let f = lambda_dual(&[g.root(2).unwrap()], &["t0"], 4).unwrap();
    assert!(f.variables.is_empty());
    assert_eq!(f.coeffs.len(), 1);
    assert_eq!(f.coeff(&[]), LinComb::from_word(make_word(&[g.root(2).unwrap()]).unwrap()));
}

#[test]
fn dual_function_monomials() {
    // Λ⟨x0, x1; t0, t1⟩ = Σ C(x0, 0^n, x1) t0^n with t1 = -t0
    let g = GroupSpec::free(&["a"]).unwrap();
    let a = g.symbol("a", 1).unwrap();
    let f = lambda_dual(&[g.identity(), a.clone()], &["t0", "t1"], 3).unwrap();
    let w = make_word(&[g.identity(), z(), z(), a.clone()]).unwrap();
    assert_eq!(f.coeff(&[("t0", 2)]), LinComb::from_word(w));
    // three points: t0·(t0 + t1) and (t0 + t1)² both contribute to t0 t1
    let b = g.symbol("a", 2).unwrap();
    let f = lambda_dual(&[g.identity(), a.clone(), b.clone()], &["t0", "t1", "t2"], 2).unwrap();
    let mut w = LinComb::from_word(make_word(&[g.identity(), z(), a.clone(), z(), b.clone()]).unwrap());
    w.add_term(make_word(&[g.identity(), a.clone(), z(), z(), b.clone()]).unwrap(), &Q::from_integer(2.into()));
    assert_eq!(f.coeff(&[("t0", 1), ("t1", 1)]), w);
    let sq = make_word(&[g.identity(), z(), z(), a, b]).unwrap();
    assert_eq!(f.coeff(&[("t0", 2)]).coeff(&sq), q_one());
    assert_eq!(f.coeff(&[("t0", 2)]).len(), 3);
}

fn q_one() -> Q {
    Q::from_integer(1.into())
}

#[test]
fn duality_over_both_backends() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = GroupSpec::mu(6).unwrap();
    for k in 1..=4usize {
        let ws = random_segments(&g, 6, k, &mut rng);
        let ts = names(k);
        assert!(duality_residual(&ws, &refs(&ts), (5 - k) as u32).unwrap().is_zero(), "μ_6 k={k}");
    }
    let h = GroupSpec::free(&["a", "b"]).unwrap();
    for k in 1..=3usize {
        let mut ws: Vec<GroupElement> = (0..k)
            .map(|_| h.symbol("a", rng.gen_range(-2..=2)).unwrap().mul(&h.symbol("b", rng.gen_range(-1..=1)).unwrap()).unwrap())
            .collect();
        let mut p = h.identity();
        for w in &ws {
            p = p.mul(w).unwrap();
        }
        ws.insert(0, p.inverse().unwrap());
        let ts = names(k);
        assert!(duality_residual(&ws, &refs(&ts), (5 - k) as u32).unwrap().is_zero(), "free k={k}");
    }
    // in weight 1 the sides differ by exactly a logarithm
    let a = h.symbol("a", 1).unwrap();
    let ws = vec![a.inverse().unwrap(), a.clone()];
    let raw = lambda_star(&ws, &singleton_slots(&["t0", "t1"]), 0).unwrap().coeff(&[]);
    let dual = lambda_dual(&[h.identity(), ws[0].clone()], &["s0", "s1"], 0).unwrap().coeff(&[]);
    let diff = scaling_normal_form(&(&raw - &dual));
    assert_eq!(diff, LinComb::from_word(make_word(&[z(), a]).unwrap()));
}

#[test]
fn dual_function_is_homogeneous_in_points() {
    let g = GroupSpec::mu(6).unwrap();
    let xs = vec![g.identity(), g.root(2).unwrap(), z(), g.root(5).unwrap()];
    let ts = names(3);
    let f = lambda_dual(&xs, &refs(&ts), 2).unwrap();
    let x = g.root(1).unwrap();
    let moved: Vec<GroupElement> = xs.iter().map(|p| if p.is_zero() { z() } else { p.mul(&x).unwrap() }).collect();
    let h = lambda_dual(&moved, &refs(&ts), 2).unwrap();
    assert_ne!(f, h);
    assert_eq!(f.scaling_normal_form(), h.scaling_normal_form());
}

#[test]
fn shift_invariance_modulo_first_shuffles() {
    let g = GroupSpec::mu(2).unwrap();
    let m = g.root(1).unwrap();
    let one = g.identity();
    let mut fs = SpanCache::new(&g, &[RelationKind::FirstShuffle]);
    let mut scaling = SpanCache::new(&g, &SCALING_ONLY);
    let cases = vec![
        vec![m.clone(), m.clone()],
        vec![one.clone(), one.clone()],
        vec![one.clone(), m.clone(), m.clone()],
        vec![m.clone(), m.clone(), one.clone(), one.clone()],
    ];
    for ws in cases {
        let k = ws.len() - 1;
        let ts = names(k);
        let d = shift_difference(&ws, &refs(&ts), "t", (5 - k) as u32).unwrap();
        assert!(!d.is_zero());
        assert!(fs.contains_all(&d).unwrap(), "{ws:?}");
        assert!(!scaling.contains_all(&d).unwrap(), "{ws:?}");
    }
}

#[test]
fn coproduct_of_generating_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = GroupSpec::mu(6).unwrap();
    for k in [2usize, 3, 3, 4] {
        let ws = random_segments(&g, 6, k, &mut rng);
        let ts = names(k);
        let f = lambda_star(&ws, &singleton_slots(&refs(&ts)), (6 - k).min(2) as u32).unwrap();
        assert!(genfun_coproduct_residual(&f).unwrap().is_zero(), "{ws:?}");
    }
    let h = GroupSpec::free(&["a", "b", "c"]).unwrap();
    let a = h.symbol("a", 1).unwrap();
    let b = h.symbol("b", -1).unwrap();
    let c = h.symbol("c", 2).unwrap();
    let d = a.mul(&b).unwrap().mul(&c).unwrap().inverse().unwrap();
    let f = lambda_star(&[a, b, c, d], &singleton_slots(&["t0", "t1", "t2", "t3"]), 2).unwrap();
    assert!(genfun_coproduct_residual(&f).unwrap().is_zero());
    // weight-1 coefficients have no coproduct on either side
    let f = lambda_star(&[h.identity()], &singleton_slots(&["t"]), 1).unwrap();
    assert!(coproduct_coeffwise(&f).is_zero());
    assert!(genfun_coproduct(&f).unwrap().map_coeffs(|x| hodgecor_core::scaling::wedge_normal_form(x)).is_zero());
}

#[test]
fn shuffle_relation_for_the_dual_function() {
    let g = GroupSpec::mu(2).unwrap();
    let one = g.identity();
    let m = g.root(1).unwrap();
    // lowest degree with r = s = 1 is a single first-shuffle generator
    let xs = vec![one.clone(), m.clone(), z()];
    let f = dual_shuffle_sum(1, 1, &xs, &["t0", "t1", "t2"], 0).unwrap();
    let gen = first_shuffle(&xs[0], &xs[1..], 1).unwrap();
    assert_eq!(scaling_normal_form(&f.coeff(&[])), scaling_normal_form(&gen.value));

    let check = genfun_first_shuffle_check(&g, 2, 1, &[m.clone(), one.clone(), m.clone(), z()], 2).unwrap();
    assert!(check.in_first_shuffle_span);
    assert!(!check.in_scaling_span);
    let check = genfun_first_shuffle_check(&g, 2, 2, &[one.clone(), m.clone(), z(), one, m], 1).unwrap();
    assert!(check.in_first_shuffle_span && !check.in_scaling_span);
}

#[test]
fn second_shuffle_series_agrees_with_relations() {
    let g = GroupSpec::mu(3).unwrap();
    let r = |k| g.root(k).unwrap();
    for (rr, ss, ws) in [
        (1usize, 1usize, vec![r(1), r(1), r(1)]),
        (2, 1, vec![r(1), r(1), r(2), r(2)]),
        (1, 2, vec![r(0), r(2), r(0), r(1)]),
    ] {
        let k = ws.len();
        let ts = names(k - 1);
        let h = olqsh_genfun(rr, ss, &ws, &singleton_slots(&refs(&ts)), 2).unwrap();
        for e in exponents_upto(k, 2) {
            let ns: Vec<usize> = e.iter().map(|&x| x as usize).collect();
            let mono: Vec<(&str, u32)> = ts.iter().map(|s| s.as_str()).zip(e.iter().cloned()).collect();
            match second_shuffle(rr, ss, &ws, &ns) {
                Ok(rel) => assert_eq!(h.coeff(&mono), rel.value, "{ns:?}"),
                Err(_) => assert!(ws.iter().all(|w| w.is_identity()) && ns.iter().all(|&n| n == 0)),
            }
        }
    }
}

#[test]
fn expansion_serializes() {
    let g = GroupSpec::mu(2).unwrap();
    let f = lambda_star(&[g.root(1).unwrap(), g.root(1).unwrap()], &singleton_slots(&["t0", "t1"]), 1).unwrap();
    let entries = f.to_entries();
    assert_eq!(entries.len(), 3);
    let text = serde_json::to_string(&entries).unwrap();
    let back: Vec<GenFunEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, entries);
}
