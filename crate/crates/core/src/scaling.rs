//! Normal form modulo the scaling relations.
//!
//! A linear projection whose kernel is exactly the span of the scaling
//! generators: in weight 1 every word is rewritten in the basis
//! `C(0, s)` (free generators `s`) and `C(1, c)` with `c ≤ c⁻¹`; in higher
//! weight a word is replaced by a fixed representative of its `G`-orbit.

use crate::group::GroupElement;
use crate::lincomb::{LinComb, WedgeComb};
use crate::rational::{q, Q};
use crate::word::{make_word, CyclicWord};

fn zero_letter_part(a: &GroupElement, c: &Q, out: &mut LinComb) {
    // C(0, Π s^{e_s}) = Σ e_s C(0, s); over μ_N every C(0, ζ) is torsion, hence 0.
    if let GroupElement::Free(m) = a {
        for (sym, e) in m {
            let mut single = std::collections::BTreeMap::new();
            single.insert(sym.clone(), 1);
            let w = make_word(&[GroupElement::Zero, GroupElement::Free(single)]).expect("nonempty");
            out.add_term(w, &(c * q(*e)));
        }
    }
}

fn add_word_nf(w: &CyclicWord, c: &Q, out: &mut LinComb) {
    let xs = w.letters();
    match w.weight() {
        0 => out.add_term(w.clone(), c),
        1 => {
            let (x, y) = (&xs[0], &xs[1]);
            if x.is_zero() && y.is_zero() {
                return;
            }
            if x.is_zero() || y.is_zero() {
                let a = if x.is_zero() { y } else { x };
                zero_letter_part(a, c, out);
                return;
            }
            zero_letter_part(x, c, out);
            let ratio = y.div(x).expect("nonzero");
            let inv = ratio.inverse().expect("nonzero");
            let one = ratio.pow(0).expect("nonzero");
            if ratio > inv {
                out.add_term(make_word(&[one, inv]).expect("nonempty"), c);
                zero_letter_part(&ratio, c, out);
            } else {
                out.add_term(make_word(&[one, ratio]).expect("nonempty"), c);
            }
        }
        _ => out.add_term(orbit_representative(w), c),
    }
}

/// The least word among `y⁻¹·w` for nonzero letters `y` of `w`.
pub fn orbit_representative(w: &CyclicWord) -> CyclicWord {
    let mut best: Option<CyclicWord> = None;
    for y in w.letters().iter().filter(|y| !y.is_zero()) {
        let cand = w.scale(&y.inverse().expect("nonzero")).expect("same group");
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_else(|| w.clone())
}

pub fn scaling_normal_form_word(w: &CyclicWord) -> LinComb {
    let mut out = LinComb::new();
    add_word_nf(w, &q(1), &mut out);
    out
}

pub fn scaling_normal_form(x: &LinComb) -> LinComb {
    let mut out = LinComb::new();
    for (w, c) in x.iter() {
        add_word_nf(w, c, &mut out);
    }
    out
}

/// Applies the normal form to both factors of every pair.
pub fn wedge_normal_form(x: &WedgeComb) -> WedgeComb {
    let mut out = WedgeComb::new();
    for ((a, b), c) in x.iter() {
        let na = scaling_normal_form_word(a);
        let nb = scaling_normal_form_word(b);
        out.add_scaled(&WedgeComb::wedge(&na, &nb), c);
    }
    out
}
