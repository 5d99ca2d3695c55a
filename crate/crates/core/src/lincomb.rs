//! Formal ℚ-linear combinations of cyclic words, pairs and triples.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::GroupSpec;
use crate::rational::{self, Q};
use crate::word::CyclicWord;

/// A finite sum `Σ c_i C(w_i)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<CyclicWord, Q>,
}

/// JSON form of one term: `{"coeff": "p/q", "word": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub coeff: String,
    pub word: Vec<String>,
}

fn bump<K: Ord + Clone>(map: &mut BTreeMap<K, Q>, key: K, c: &Q) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c.clone());
        }
    }
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_word(w: CyclicWord) -> Self {
        let mut x = Self::new();
        x.add_term(w, &rational::q(1));
        x
    }

    pub fn add_term(&mut self, w: CyclicWord, c: &Q) {
        bump(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Q) {
        for (w, v) in &other.terms {
            bump(&mut self.terms, w.clone(), &(v * c));
        }
    }

    pub fn scaled(&self, c: &Q) -> LinComb {
        let mut out = LinComb::new();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &CyclicWord) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, &Q)> {
        self.terms.iter()
    }

    /// Distinct weights of the stored words.
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.terms.keys().map(|k| k.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Rescales so the first coefficient is 1; used to deduplicate spans.
    pub fn normalized(&self) -> LinComb {
        match self.terms.values().next() {
            Some(c) => self.scaled(&(Q::from_integer(1.into()) / c)),
            None => LinComb::new(),
        }
    }

    pub fn to_entries(&self) -> Vec<TermEntry> {
        self.terms
            .iter()
            .map(|(w, c)| TermEntry { coeff: rational::to_text(c), word: w.to_strings() })
            .collect()
    }

    pub fn from_entries(spec: &GroupSpec, entries: &[TermEntry]) -> Result<Self> {
        let mut out = LinComb::new();
        for e in entries {
            let letters: Result<Vec<_>> = e.word.iter().map(|s| spec.parse_element(s)).collect();
            out.add_term(CyclicWord::new(letters?)?, &rational::parse(&e.coeff)?);
        }
        Ok(out)
    }
}

impl std::ops::Add for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &rational::q(1));
        out
    }
}

impl std::ops::Sub for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &rational::q(-1));
        out
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { "" } else if c.is_negative() { " - " } else { " + " };
            let c = if i == 0 { c.clone() } else { c.abs() };
            write!(f, "{sep}{c}·{w}")?;
        }
        Ok(())
    }
}

/// `Σ c (a ∧ b)` with `a < b` in every key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeComb {
    terms: BTreeMap<(CyclicWord, CyclicWord), Q>,
}

impl WedgeComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_pair(&mut self, a: CyclicWord, b: CyclicWord, c: &Q) {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => {}
            Less => bump(&mut self.terms, (a, b), c),
            Greater => bump(&mut self.terms, (b, a), &-c),
        }
    }

    pub fn add_scaled(&mut self, other: &WedgeComb, c: &Q) {
        for (k, v) in &other.terms {
            bump(&mut self.terms, k.clone(), &(v * c));
        }
    }

    /// `x ∧ y` extended bilinearly.
    pub fn wedge(x: &LinComb, y: &LinComb) -> WedgeComb {
        let mut out = WedgeComb::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_pair(a.clone(), b.clone(), &(ca * cb));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(CyclicWord, CyclicWord), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &CyclicWord, b: &CyclicWord) -> Q {
        if a <= b {
            self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Q::zero)
        } else {
            -self.terms.get(&(b.clone(), a.clone())).cloned().unwrap_or_else(Q::zero)
        }
    }

    /// Drops every pair whose two components both have weight 1.
    pub fn without_weight1_pairs(&self) -> WedgeComb {
        WedgeComb {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| !(a.weight() == 1 && b.weight() == 1))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for WedgeComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("{c}·{a}∧{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ c (a ∧ b ∧ c)` with sorted keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleWedge {
    terms: BTreeMap<[CyclicWord; 3], Q>,
}

impl TripleWedge {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_triple(&mut self, a: CyclicWord, b: CyclicWord, c: CyclicWord, coeff: &Q) {
        let mut key = [a, b, c];
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                match key[j].cmp(&key[j + 1]) {
                    std::cmp::Ordering::Equal => return,
                    std::cmp::Ordering::Greater => {
                        key.swap(j, j + 1);
                        sign = -sign;
                    }
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        if key[0] == key[1] || key[1] == key[2] {
            return;
        }
        let c = if sign > 0 { coeff.clone() } else { -coeff };
        bump(&mut self.terms, key, &c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::rational::q;
    use crate::word::make_word;

    #[test]
    fn antisymmetry_cancels() {
        let g = GroupSpec::mu(3).unwrap();
        let a = make_word(&[g.root(0).unwrap(), g.root(1).unwrap()]).unwrap();
        let b = make_word(&[g.zero(), g.root(2).unwrap()]).unwrap();
        let mut w = WedgeComb::new();
        w.add_pair(a.clone(), b.clone(), &q(3));
        w.add_pair(b.clone(), a.clone(), &q(3));
        assert!(w.is_zero());
        w.add_pair(a.clone(), a.clone(), &q(1));
        assert!(w.is_zero());
        w.add_pair(b.clone(), a.clone(), &q(2));
        assert_eq!(w.coeff(&a, &b), q(-2));
    }

    #[test]
    fn triple_signs() {
        let g = GroupSpec::mu(4).unwrap();
        let w: Vec<_> = (0..3).map(|k| make_word(&[g.zero(), g.root(k).unwrap()]).unwrap()).collect();
        let mut t = TripleWedge::new();
        t.add_triple(w[0].clone(), w[1].clone(), w[2].clone(), &q(1));
        t.add_triple(w[1].clone(), w[0].clone(), w[2].clone(), &q(1));
        assert!(t.is_zero());
        t.add_triple(w[2].clone(), w[0].clone(), w[1].clone(), &q(1));
        t.add_triple(w[0].clone(), w[1].clone(), w[2].clone(), &q(-1));
        assert!(t.is_zero());
    }

    #[test]
    fn entries_round_trip() {
        let g = GroupSpec::free(&["a", "b"]).unwrap();
        let mut x = LinComb::new();
        x.add_term(crate::word::CyclicWord::parse(&g, "(1,0,a)").unwrap(), &crate::rational::qf(-3, 4));
        x.add_term(crate::word::CyclicWord::parse(&g, "(a*b^-1,b)").unwrap(), &q(2));
        let e = x.to_entries();
        assert_eq!(LinComb::from_entries(&g, &e).unwrap(), x);
    }
}
