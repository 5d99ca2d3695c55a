//! Quasishuffles of two ordered blocks `{1..r}` and `{r+1..r+s}`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// A surjection `{1..r+s} → {1..M}` strictly increasing on each block.
/// Indices and slots are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quasishuffle {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub assignment: Vec<usize>,
}

impl Quasishuffle {
    pub fn is_shuffle(&self) -> bool {
        self.m == self.r + self.s
    }

    /// `(-1)^{r+s-M}`.
    pub fn sign(&self) -> i64 {
        if (self.r + self.s - self.m) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The indices placed in each slot, in block order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![vec![]; self.m];
        for (i, &slot) in self.assignment.iter().enumerate() {
            f[slot].push(i);
        }
        f
    }
}

/// All quasishuffles in a fixed order: at each slot take from A, from B, or both.
pub fn enumerate_quasishuffles(r: usize, s: usize) -> Vec<Quasishuffle> {
    let mut out = vec![];
    let mut assignment = vec![0; r + s];
    rec(r, s, 0, 0, 0, &mut assignment, &mut out);
    out
}

fn rec(r: usize, s: usize, i: usize, j: usize, slot: usize, asg: &mut Vec<usize>, out: &mut Vec<Quasishuffle>) {
    if i == r && j == s {
        out.push(Quasishuffle { r, s, m: slot, assignment: asg.clone() });
        return;
    }
    if i < r {
        asg[i] = slot;
        rec(r, s, i + 1, j, slot + 1, asg, out);
    }
    if j < s {
        asg[r + j] = slot;
        rec(r, s, i, j + 1, slot + 1, asg, out);
    }
    if i < r && j < s {
        asg[i] = slot;
        asg[r + j] = slot;
        rec(r, s, i + 1, j + 1, slot + 1, asg, out);
    }
}

/// `Σ_j (r+s-j)! / ((r-j)! (s-j)! j!)`.
pub fn quasishuffle_count(r: usize, s: usize) -> BigUint {
    let fact = |n: usize| (1..=n).fold(BigUint::one(), |a, k| a * k);
    (0..=r.min(s))
        .map(|j| fact(r + s - j) / (fact(r - j) * fact(s - j) * fact(j)))
        .sum()
}
