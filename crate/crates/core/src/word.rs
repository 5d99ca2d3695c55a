//! Cyclic words `C(x0, …, xn)` stored as their minimal rotation.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// A tensor word up to cyclic rotation. Weight is `len - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<GroupElement>,
}

/// Canonicalizes a letter list under rotation.
pub fn make_word(letters: &[GroupElement]) -> Result<CyclicWord> {
    if letters.is_empty() {
        return Err(Error::Domain("a cyclic word needs at least one letter".into()));
    }
    Ok(CyclicWord { letters: min_rotation(letters) })
}

fn min_rotation(letters: &[GroupElement]) -> Vec<GroupElement> {
    let n = letters.len();
    let mut best = 0;
    for start in 1..n {
        for k in 0..n {
            let a = &letters[(start + k) % n];
            let b = &letters[(best + k) % n];
            if a != b {
                if a < b {
                    best = start;
                }
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&letters[best..]);
    out.extend_from_slice(&letters[..best]);
    out
}

impl CyclicWord {
    pub fn new(letters: Vec<GroupElement>) -> Result<Self> {
        make_word(&letters)
    }

    pub fn letters(&self) -> &[GroupElement] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> usize {
        self.letters.len() - 1
    }

    /// Number of nonzero letters minus one; `None` for an all-zero word.
    pub fn depth(&self) -> Option<usize> {
        let nz = self.letters.iter().filter(|x| !x.is_zero()).count();
        nz.checked_sub(1)
    }

    pub fn all_equal(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] == w[1])
    }

    /// Multiplies every letter by `a`.
    pub fn scale(&self, a: &GroupElement) -> Result<Self> {
        let v: Result<Vec<_>> = self.letters.iter().map(|x| x.mul(a)).collect();
        make_word(&v?)
    }

    /// The letter list starting at position `k` of the canonical form.
    pub fn rotation(&self, k: usize) -> Vec<GroupElement> {
        let n = self.letters.len();
        (0..n).map(|i| self.letters[(k + i) % n].clone()).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.letters.clone();
        v.reverse();
        CyclicWord { letters: min_rotation(&v) }
    }

    pub fn parse(spec: &GroupSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(t);
        let letters: Result<Vec<_>> = inner.split(',').map(|s| spec.parse_element(s)).collect();
        make_word(&letters?)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.letters.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({})", self.to_strings().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_agree() {
        let g = GroupSpec::mu(5).unwrap();
        let l = |k| g.root(k).unwrap();
        let w = make_word(&[l(0), GroupElement::Zero, l(3)]).unwrap();
        assert_eq!(w.letters()[0], GroupElement::Zero);
        assert_eq!(w.letters(), &[GroupElement::Zero, l(3), l(0)]);
        let zz = make_word(&[GroupElement::Zero, GroupElement::Zero]).unwrap();
        assert_eq!(zz.weight(), 1);
        assert!(make_word(&[]).is_err());
    }

    #[test]
    fn depth_counts_nonzero_letters() {
        let g = GroupSpec::free(&["g", "h"]).unwrap();
        let w = CyclicWord::parse(&g, "(0,0,1,g,0,h)").unwrap();
        assert_eq!(w.depth(), Some(2));
        assert_eq!(w.weight(), 5);
        assert_eq!(CyclicWord::parse(&g, "(0,0)").unwrap().depth(), None);
    }

    #[test]
    fn periodic_word() {
        let g = GroupSpec::mu(3).unwrap();
        let a = g.root(1).unwrap();
        let b = g.root(2).unwrap();
        let w1 = make_word(&[b.clone(), a.clone(), b.clone(), a.clone()]).unwrap();
        let w2 = make_word(&[a.clone(), b.clone(), a, b]).unwrap();
        assert_eq!(w1, w2);
    }
}
