//! Relation generators of the quasidihedral coalgebra, built as linear
//! combinations of cyclic words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::lincomb::LinComb;
use crate::quasishuffle::{enumerate_quasishuffles, Quasishuffle};
use crate::rational::{q, Q};
use crate::star::{star_to_word, StarWord};
use crate::word::{make_word, CyclicWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    FirstShuffle,
    /// `C(0,0)` and `C(ab,ac) - C(0,a) - C(b,c)` in weight 1.
    ScalingW1,
    /// `C(x) - C(ax)` in weight above 1.
    ScalingMultiplicative,
    DistributionRel,
    SecondShuffle,
    DilogBaseCase,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::FirstShuffle => "first-shuffle",
            RelationKind::ScalingW1 => "scaling-w1",
            RelationKind::ScalingMultiplicative => "scaling-multiplicative",
            RelationKind::DistributionRel => "distribution",
            RelationKind::SecondShuffle => "second-shuffle",
            RelationKind::DilogBaseCase => "dilog-base-case",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationElement {
    pub kind: RelationKind,
    pub value: LinComb,
    /// Depth of the leading terms (`r + s` for second shuffles).
    pub depth: usize,
    pub weight: usize,
    pub metadata: String,
}

fn letters_text(xs: &[GroupElement]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `Σ_{σ ∈ Σ_{r,s}} C(x0, x_{σ⁻¹(1)}, …, x_{σ⁻¹(r+s)})`.
pub fn first_shuffle(x0: &GroupElement, xs: &[GroupElement], r: usize) -> Result<RelationElement> {
    if r == 0 || r >= xs.len() {
        return Err(Error::Domain(format!("need 1 ≤ r < {}, got r = {r}", xs.len())));
    }
    let s = xs.len() - r;
    let mut value = LinComb::new();
    let one = q(1);
    for sh in enumerate_quasishuffles(r, s).into_iter().filter(|x| x.is_shuffle()) {
        let mut word = vec![GroupElement::Zero; r + s + 1];
        word[0] = x0.clone();
        for (i, &slot) in sh.assignment.iter().enumerate() {
            word[slot + 1] = xs[i].clone();
        }
        value.add_term(make_word(&word)?, &one);
    }
    let depth = std::iter::once(x0).chain(xs).filter(|x| !x.is_zero()).count().saturating_sub(1);
    Ok(RelationElement {
        kind: RelationKind::FirstShuffle,
        value,
        depth,
        weight: r + s,
        metadata: format!("x0={x0}; xs=[{}]; r={r}", letters_text(xs)),
    })
}

/// `C(ab, ac) - C(0, a) - C(b, c)`.
///
/// `b = c = 0` is rejected: it would force `C(0, a) = 0`, which is false for
/// Hodge correlators (`log|a|`). `C(0,0)` is a separate generator.
pub fn scaling_relation_w1(a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<RelationElement> {
    if a.is_zero() {
        return Err(Error::Domain("scaling factor must be nonzero".into()));
    }
    if b.is_zero() && c.is_zero() {
        return Err(Error::Domain("b = c = 0 is not a scaling relation; use C(0,0)".into()));
    }
    let mut value = LinComb::new();
    value.add_term(make_word(&[a.mul(b)?, a.mul(c)?])?, &q(1));
    value.add_term(make_word(&[GroupElement::Zero, a.clone()])?, &q(-1));
    value.add_term(make_word(&[b.clone(), c.clone()])?, &q(-1));
    Ok(RelationElement {
        kind: RelationKind::ScalingW1,
        value,
        depth: 1,
        weight: 1,
        metadata: format!("a={a}; b={b}; c={c}"),
    })
}

pub fn scaling_zero_zero() -> RelationElement {
    let w = make_word(&[GroupElement::Zero, GroupElement::Zero]).expect("nonempty");
    RelationElement {
        kind: RelationKind::ScalingW1,
        value: LinComb::from_word(w),
        depth: 0,
        weight: 1,
        metadata: "C(0,0)".into(),
    }
}

/// `C(x) - C(a·x)` for a word of weight above 1.
pub fn multiplicative_invariance(word: &CyclicWord, a: &GroupElement) -> Result<RelationElement> {
    if a.is_zero() {
        return Err(Error::Domain("scaling factor must be nonzero".into()));
    }
    if word.weight() < 2 {
        return Err(Error::Domain("multiplicative invariance holds only in weight > 1".into()));
    }
    let mut value = LinComb::from_word(word.clone());
    value.add_term(word.scale(a)?, &q(-1));
    Ok(RelationElement {
        kind: RelationKind::ScalingMultiplicative,
        value,
        depth: word.depth().unwrap_or(0),
        weight: word.weight(),
        metadata: format!("word={word}; a={a}"),
    })
}

/// `C(x) - (l^m / l) Σ_{y_i^l = x_i} C(y)`, `m` the number of zeros.
///
/// Inside `μ_N` with `l | N` the `l`-torsion has exactly `l` elements.
pub fn distribution_relation(spec: &GroupSpec, word: &CyclicWord, l: u32) -> Result<RelationElement> {
    let xs = word.letters();
    if xs.len() == 2 && xs[0] == xs[1] {
        return Err(Error::Domain("distribution relation excluded for C(x, x)".into()));
    }
    let roots: Vec<Vec<GroupElement>> = xs
        .iter()
        .map(|x| if x.is_zero() { Ok(vec![GroupElement::Zero]) } else { spec.lth_roots(x, l) })
        .collect::<Result<_>>()?;
    let m = xs.iter().filter(|x| x.is_zero()).count() as u32;
    // Preimages of 0 are all 0; the l-fold repetition is absorbed into l^m.
    let prefactor = Q::new(num_bigint::BigInt::from(l).pow(m), num_bigint::BigInt::from(l));
    let mut value = LinComb::from_word(word.clone());
    let neg = -prefactor;
    let mut idx = vec![0usize; xs.len()];
    loop {
        let ys: Vec<GroupElement> = idx.iter().zip(&roots).map(|(&i, r)| r[i].clone()).collect();
        value.add_term(make_word(&ys)?, &neg);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(RelationElement {
                    kind: RelationKind::DistributionRel,
                    value,
                    depth: word.depth().unwrap_or(0),
                    weight: word.weight(),
                    metadata: format!("word={word}; l={l}"),
                });
            }
            idx[pos] += 1;
            if idx[pos] < roots[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Segment data `(w_i | n_i)` indexed `0..=k`, with segment 0 held fixed.
#[derive(Clone, Debug)]
struct Segments<'a> {
    ws: &'a [GroupElement],
    ns: &'a [usize],
}

impl Segments<'_> {
    /// `(w_S | n_S)` with `n_S = Σ_{i∈S}(n_i + 1) - 1`.
    fn merged(&self, idx: &[usize]) -> Result<(GroupElement, usize)> {
        let mut w = self.ws[0].pow(0)?;
        let mut n = 0;
        for &i in idx {
            w = w.mul(&self.ws[i])?;
            n += self.ns[i] + 1;
        }
        Ok((w, n - 1))
    }
}

fn check_second_shuffle_input(r: usize, s: usize, ws: &[GroupElement], ns: &[usize]) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::Domain("second shuffles need r, s ≥ 1".into()));
    }
    if ws.len() != r + s + 1 || ns.len() != r + s + 1 {
        return Err(Error::Domain(format!("expected {} segments", r + s + 1)));
    }
    StarWord::new(ws.iter().cloned().zip(ns.iter().cloned()).collect())?;
    if ws.iter().all(|w| w.is_identity()) && ns.iter().all(|&n| n == 0) {
        return Err(Error::Domain(
            "second shuffle excluded when all w_i = 1 and all n_i = 0".into(),
        ));
    }
    Ok(())
}

/// The star word attached to one quasishuffle: merged slots, then `(w0|n0)`.
pub fn quasishuffle_term(sigma: &Quasishuffle, ws: &[GroupElement], ns: &[usize]) -> Result<StarWord> {
    let seg = Segments { ws, ns };
    let mut segments = Vec::with_capacity(sigma.m + 1);
    for fiber in sigma.fibers() {
        let idx: Vec<usize> = fiber.iter().map(|i| i + 1).collect();
        segments.push(seg.merged(&idx)?);
    }
    segments.push((ws[0].clone(), ns[0]));
    StarWord::new(segments)
}

/// Second shuffle with an optional sign flip on the quasishuffle at `flip`;
/// the flip exists only to build negative controls.
pub fn second_shuffle_with_flip(
    r: usize,
    s: usize,
    ws: &[GroupElement],
    ns: &[usize],
    flip: Option<usize>,
) -> Result<RelationElement> {
    check_second_shuffle_input(r, s, ws, ns)?;
    let seg = Segments { ws, ns };
    let mut value = LinComb::new();
    for (t, sigma) in enumerate_quasishuffles(r, s).iter().enumerate() {
        let mut sign = sigma.sign();
        if flip == Some(t) {
            sign = -sign;
        }
        value.add_term(star_to_word(&quasishuffle_term(sigma, ws, ns)?)?, &q(sign));
    }
    let a: Vec<usize> = (1..=r).collect();
    let b: Vec<usize> = (r + 1..=r + s).collect();
    for (keep, merge) in [(&a, &b), (&b, &a)] {
        let mut segments: Vec<(GroupElement, usize)> = keep.iter().map(|&i| (ws[i].clone(), ns[i])).collect();
        let mut idx = merge.clone();
        idx.push(0);
        segments.push(seg.merged(&idx)?);
        value.add_term(star_to_word(&StarWord::new(segments)?)?, &q(-1));
    }
    Ok(RelationElement {
        kind: RelationKind::SecondShuffle,
        value,
        depth: r + s,
        weight: r + s + ns.iter().sum::<usize>(),
        metadata: format!("r={r}; s={s}; ws=[{}]; ns={ns:?}", letters_text(ws)),
    })
}

/// `Σ_{σ ∈ Σ̄_{r,s}} (-1)^{r+s-M} C*(…, w0|n0)` minus the two collapse terms.
pub fn second_shuffle(r: usize, s: usize, ws: &[GroupElement], ns: &[usize]) -> Result<RelationElement> {
    second_shuffle_with_flip(r, s, ws, ns, None)
}

/// Only the proper shuffles, all of depth `r + s`.
pub fn depth_graded_second_shuffle(r: usize, s: usize, ws: &[GroupElement], ns: &[usize]) -> Result<RelationElement> {
    check_second_shuffle_input(r, s, ws, ns)?;
    let mut value = LinComb::new();
    for sigma in enumerate_quasishuffles(r, s).iter().filter(|x| x.is_shuffle()) {
        value.add_term(star_to_word(&quasishuffle_term(sigma, ws, ns)?)?, &q(1));
    }
    Ok(RelationElement {
        kind: RelationKind::SecondShuffle,
        value,
        depth: r + s,
        weight: r + s + ns.iter().sum::<usize>(),
        metadata: format!("depth-graded; r={r}; s={s}; ws=[{}]; ns={ns:?}", letters_text(ws)),
    })
}

/// `C*(a|0,b|0,c|0) + C*(b|0,a|0,c|0) - C*(ab|1,c|0) - C*(a|0,bc|1) - C*(b|0,ac|1)`
/// with `c = (ab)^{-1}`.
pub fn dilog_base_case(a: &GroupElement, b: &GroupElement) -> Result<RelationElement> {
    let c = a.mul(b)?.inverse()?;
    let terms: [(Vec<(GroupElement, usize)>, i64); 5] = [
        (vec![(a.clone(), 0), (b.clone(), 0), (c.clone(), 0)], 1),
        (vec![(b.clone(), 0), (a.clone(), 0), (c.clone(), 0)], 1),
        (vec![(a.mul(b)?, 1), (c.clone(), 0)], -1),
        (vec![(a.clone(), 0), (b.mul(&c)?, 1)], -1),
        (vec![(b.clone(), 0), (a.mul(&c)?, 1)], -1),
    ];
    let mut value = LinComb::new();
    for (segs, sign) in terms {
        value.add_term(star_to_word(&StarWord::new(segs)?)?, &q(sign));
    }
    Ok(RelationElement {
        kind: RelationKind::DilogBaseCase,
        value,
        depth: 2,
        weight: 2,
        metadata: format!("a={a}; b={b}"),
    })
}
