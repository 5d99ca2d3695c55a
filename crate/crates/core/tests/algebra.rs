use std::collections::BTreeSet;

use hodgecor_core::*;
use proptest::prelude::*;

fn mu6_letter() -> impl Strategy<Value = GroupElement> {
    (0i64..7).prop_map(|k| {
        let g = GroupSpec::mu(6).unwrap();
        if k == 6 {
            g.zero()
        } else {
            g.root(k).unwrap()
        }
    })
}

fn free3() -> GroupSpec {
    GroupSpec::free(&["a", "b", "c"]).unwrap()
}

fn free_letter() -> impl Strategy<Value = GroupElement> {
    (any::<bool>(), -2i64..=2, -2i64..=2, -1i64..=1).prop_map(|(zero, x, y, z)| {
        let g = free3();
        if zero {
            return g.zero();
        }
        let p = g.symbol("a", x).unwrap().mul(&g.symbol("b", y).unwrap()).unwrap();
        p.mul(&g.symbol("c", z).unwrap()).unwrap()
    })
}

fn word_strategy() -> impl Strategy<Value = CyclicWord> {
    prop_oneof![
        prop::collection::vec(mu6_letter(), 2..=7),
        prop::collection::vec(free_letter(), 2..=7),
    ]
    .prop_map(|v| make_word(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn coproduct_satisfies_cojacobi(w in word_strategy()) {
        prop_assert!(cojacobi_defect(&LinComb::from_word(w)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_rotation(letters in prop::collection::vec(mu6_letter(), 1..=7), k in 0usize..7) {
        let w = make_word(&letters).unwrap();
        let mut rotated = letters.clone();
        rotated.rotate_left(k % letters.len());
        prop_assert_eq!(make_word(&rotated).unwrap(), w.clone());
        for j in 0..w.len() {
            prop_assert!(w.letters() <= w.rotation(j).as_slice());
        }
    }

    #[test]
    fn coproduct_is_rotation_invariant_and_weight_graded(w in word_strategy()) {
        let d = coproduct_word(&w);
        for ((a, b), _) in d.iter() {
            prop_assert_eq!(a.weight() + b.weight(), w.weight());
            prop_assert!(a.weight() >= 1 && b.weight() >= 1);
        }
        let rot = make_word(&w.rotation(1)).unwrap();
        prop_assert_eq!(coproduct_word(&rot), d);
    }

    #[test]
    fn scaling_round_trip(w in prop::collection::vec(free_letter(), 2..=6), x in free_letter()) {
        prop_assume!(!x.is_zero());
        let w = make_word(&w).unwrap();
        let back = w.scale(&x).unwrap().scale(&x.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn star_round_trip(exps in prop::collection::vec((-2i64..=2, -2i64..=2), 1..=4), ns in prop::collection::vec(0usize..3, 5)) {
        let g = free3();
        let mut segs: Vec<(GroupElement, usize)> = exps
            .iter()
            .zip(&ns)
            .map(|((x, y), n)| (g.symbol("a", *x).unwrap().mul(&g.symbol("b", *y).unwrap()).unwrap(), *n))
            .collect();
        let mut prod = g.identity();
        for (w, _) in &segs {
            prod = prod.mul(w).unwrap();
        }
        segs.insert(0, (prod.inverse().unwrap(), ns[4]));
        let star = StarWord::new(segs).unwrap();
        let w = star_to_word(&star).unwrap();
        prop_assert_eq!(w.weight(), star.weight());
        prop_assert_eq!(w.depth(), Some(star.depth()));
        for base in 0..w.len() {
            let b = &w.letters()[base];
            if b.is_zero() {
                continue;
            }
            let d = depth_decompose(&w, base).unwrap();
            prop_assert_eq!(d.star.depth(), star.depth());
            prop_assert_eq!(star_to_word(&d.star).unwrap(), w.scale(&b.inverse().unwrap()).unwrap());
        }
    }

    #[test]
    fn group_laws((x, y, z) in prop_oneof![
        (mu6_letter(), mu6_letter(), mu6_letter()),
        (free_letter(), free_letter(), free_letter()),
    ]) {
        prop_assume!(!x.is_zero() && !y.is_zero() && !z.is_zero());
        let xy_z = x.mul(&y).unwrap().mul(&z).unwrap();
        let x_yz = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert!(x.mul(&x.inverse().unwrap()).unwrap().is_identity());
        prop_assert_eq!(x.pow(3).unwrap(), x.mul(&x).unwrap().mul(&x).unwrap());
        prop_assert_eq!(x.div(&y).unwrap().mul(&y).unwrap(), x);
    }

    #[test]
    fn element_text_round_trip(x in free_letter(), y in mu6_letter()) {
        prop_assert_eq!(free3().parse_element(&x.to_string()).unwrap(), x);
        prop_assert_eq!(GroupSpec::mu(6).unwrap().parse_element(&y.to_string()).unwrap(), y);
    }
}

#[test]
fn zero_has_no_inverse_and_groups_do_not_mix() {
    let g = GroupSpec::mu(4).unwrap();
    assert!(g.zero().inverse().is_err());
    let h = GroupSpec::mu(6).unwrap();
    assert!(matches!(g.root(1).unwrap().mul(&h.root(1).unwrap()), Err(Error::Config(_))));
    assert!(matches!(g.root(1).unwrap().mul(&free3().symbol("a", 1).unwrap()), Err(Error::Config(_))));
}

/// Pairs of subsets `A, B ⊆ 0..m` with `|A| = r`, `|B| = s`, `A ∪ B = 0..m`,
/// read as the increasing assignments of the two blocks.
fn brute_quasishuffles(r: usize, s: usize) -> BTreeSet<Vec<usize>> {
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
                    out.insert(a.iter().chain(&b).cloned().collect());
                }
            }
        }
    }
    out
}

#[test]
fn quasishuffles_match_brute_force() {
    for r in 1..=7 {
        for s in 1..=(8 - r) {
            let listed = enumerate_quasishuffles(r, s);
            let set: BTreeSet<Vec<usize>> = listed.iter().map(|q| q.assignment.clone()).collect();
            assert_eq!(set.len(), listed.len(), "duplicates for ({r},{s})");
            assert_eq!(quasishuffle_count(r, s), listed.len().into(), "count for ({r},{s})");
            assert_eq!(set, brute_quasishuffles(r, s), "({r},{s})");
        }
    }
}

#[test]
fn quasishuffle_counts_are_delannoy_numbers() {
    // central values 3, 13, 63, 321, 1683
    let expect = [3u32, 13, 63, 321, 1683];
    for (n, e) in (1..=5).zip(expect) {
        assert_eq!(quasishuffle_count(n, n), e.into());
    }
}
