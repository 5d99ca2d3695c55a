//! The coproduct `δ` splitting a circle of points into two arcs.
//!
//! `δ C(x0, …, xn) = Σ_cyc Σ_{i=1}^{n-1} C(x0, …, xi) ∧ C(x0, x_{i+1}, …, xn)`,
//! the outer sum running over all `n + 1` cyclic shifts of the letters.

use crate::lincomb::{LinComb, TripleWedge, WedgeComb};
use crate::rational::Q;
use crate::word::{make_word, CyclicWord};

pub fn coproduct_word(w: &CyclicWord) -> WedgeComb {
    let mut out = WedgeComb::new();
    add_coproduct_word(&mut out, w, &Q::from_integer(1.into()));
    out
}

fn add_coproduct_word(out: &mut WedgeComb, w: &CyclicWord, c: &Q) {
    let n = w.weight();
    if n < 2 {
        return;
    }
    for k in 0..=n {
        let y = w.rotation(k);
        for i in 1..n {
            let left = make_word(&y[..=i]).expect("nonempty");
            let mut r = Vec::with_capacity(n - i + 1);
            r.push(y[0].clone());
            r.extend_from_slice(&y[i + 1..]);
            let right = make_word(&r).expect("nonempty");
            debug_assert_eq!(left.weight() + right.weight(), n);
            out.add_pair(left, right, c);
        }
    }
}

pub fn coproduct(x: &LinComb) -> WedgeComb {
    let mut out = WedgeComb::new();
    for (w, c) in x.iter() {
        add_coproduct_word(&mut out, w, c);
    }
    out
}

/// Image of `(δ ⊗ 1)δ x` in `∧³`; zero for every `x` by co-Jacobi.
///
/// An element of `∧² ⊗ C` has vanishing cyclic symmetrization iff its full
/// antisymmetrization vanishes, so comparing in `∧³` is equivalent.
pub fn cojacobi_defect(x: &LinComb) -> TripleWedge {
    let mut out = TripleWedge::new();
    for ((a, b), c) in coproduct(x).iter() {
        for ((p, q), d) in coproduct_word(a).iter() {
            out.add_triple(p.clone(), q.clone(), b.clone(), &(c * d));
        }
        for ((p, q), d) in coproduct_word(b).iter() {
            out.add_triple(p.clone(), q.clone(), a.clone(), &-(c * d));
        }
    }
    out
}
