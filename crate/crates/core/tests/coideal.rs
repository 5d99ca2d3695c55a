use hodgecor_core::coideal::{verify_coideal, CoidealOptions, Family, Mutation, SpanOracle};
use hodgecor_core::relations::{second_shuffle, RelationKind};
use hodgecor_core::*;

fn quotient_dims(spec: &GroupSpec, opts: &CoidealOptions) -> (bool, Vec<usize>) {
    let reports = verify_coideal(spec, opts).unwrap();
    let ok = reports.iter().all(|r| r.contained);
    (ok, reports.iter().map(|r| r.dim_space - r.dim_relations).collect())
}

#[test]
fn trivial_group_up_to_weight_five() {
    let g = GroupSpec::mu(1).unwrap();
    let (ok, dims) = quotient_dims(&g, &CoidealOptions::new(5));
    assert!(ok);
    // one survivor in each odd weight, the zeta values
    assert_eq!(dims, vec![1, 0, 1, 0, 1]);
}

#[test]
fn sign_group_up_to_weight_four() {
    let g = GroupSpec::mu(2).unwrap();
    let (ok, dims) = quotient_dims(&g, &CoidealOptions::new(4));
    assert!(ok);
    assert_eq!(dims, vec![2, 0, 1, 1]);
    let mut opts = CoidealOptions::new(4);
    opts.restricted = true;
    let (ok, dims) = quotient_dims(&g, &opts);
    assert!(ok);
    assert_eq!(dims, vec![1, 0, 1, 1]);
}

#[test]
fn first_shuffles_alone_form_a_coideal() {
    let mut opts = CoidealOptions::new(5);
    opts.family = Family::FirstShuffle;
    let (ok, dims) = quotient_dims(&GroupSpec::mu(1).unwrap(), &opts);
    assert!(ok);
    assert_eq!(dims[2], 1);
    let mut opts = CoidealOptions::new(3);
    opts.family = Family::FirstShuffle;
    assert!(quotient_dims(&GroupSpec::mu(3).unwrap(), &opts).0);
}

#[test]
fn flipped_quasishuffle_sign_is_detected() {
    let g = GroupSpec::mu(2).unwrap();
    let mut opts = CoidealOptions::new(4);
    opts.mutation = Some(Mutation { weight: 4, r: 2, s: 2, ns: vec![0; 5], flip_index: 3, occurrence: 0 });
    let reports = verify_coideal(&g, &opts).unwrap();
    assert!(reports[..3].iter().all(|r| r.contained));
    let last = &reports[3];
    assert!(!last.contained);
    let w = last.witness.as_ref().expect("witness");
    assert!(!w.kind.is_empty() && !w.metadata.is_empty());
    assert!(!w.generator.is_empty());
    assert_ne!(w.residual_coeff, "0");
}

#[test]
fn resource_limit_is_reported() {
    let mut opts = CoidealOptions::new(4);
    opts.max_dim = Some(5);
    assert!(matches!(verify_coideal(&GroupSpec::mu(2).unwrap(), &opts), Err(Error::Resource(_))));
}

#[test]
fn second_shuffles_are_not_consequences_of_the_rest() {
    // the weight-3 quotient of μ_2 would be smaller without them
    let g = GroupSpec::mu(2).unwrap();
    let others = [
        RelationKind::FirstShuffle,
        RelationKind::ScalingW1,
        RelationKind::ScalingMultiplicative,
        RelationKind::DistributionRel,
    ];
    let opts = CoidealOptions::new(3);
    let partial = SpanOracle::new(&g, 3, &opts, &others).unwrap();
    let mut all = others.to_vec();
    all.push(RelationKind::SecondShuffle);
    let full = SpanOracle::new(&g, 3, &opts, &all).unwrap();
    assert!(full.dim() > partial.dim());
    let one = g.identity();
    let m = g.root(1).unwrap();
    let rel = second_shuffle(1, 1, &[one.clone(), m.clone(), m], &[0, 1, 0]).unwrap();
    assert!(full.contains(&rel.value));
}
