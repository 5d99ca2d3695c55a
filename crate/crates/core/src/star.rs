//! The inhomogeneous notation `C*(w0|n0, …, wk|nk)`.
//!
//! With partial products `p_0 = 1`, `p_i = w_1⋯w_i`, the star word expands to
//! `C(0^{n0}, p_0, 0^{n1}, p_1, …, 0^{nk}, p_k)`: segment `i ≥ 1` is the arc of
//! `n_i` zeros ending at `p_i`, and segment 0 closes the circle with ratio
//! `w_0 = (w_1⋯w_k)^{-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::word::{make_word, CyclicWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarWord {
    segments: Vec<(GroupElement, usize)>,
}

impl StarWord {
    pub fn new(segments: Vec<(GroupElement, usize)>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Domain("a star word needs at least one segment".into()));
        }
        if segments.iter().any(|(w, _)| w.is_zero()) {
            return Err(Error::Domain("star word letters must be nonzero".into()));
        }
        let mut prod = segments[0].0.clone();
        for (w, _) in &segments[1..] {
            prod = prod.mul(w)?;
        }
        if !prod.is_identity() {
            return Err(Error::Domain(format!("star word letters multiply to {prod}, not 1")));
        }
        Ok(StarWord { segments })
    }

    pub fn segments(&self) -> &[(GroupElement, usize)] {
        &self.segments
    }

    /// `k`, one less than the number of segments.
    pub fn depth(&self) -> usize {
        self.segments.len() - 1
    }

    pub fn weight(&self) -> usize {
        self.depth() + self.segments.iter().map(|(_, n)| n).sum::<usize>()
    }

    /// The letter list before rotation canonicalization.
    pub fn expand(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(self.weight() + 1);
        let mut p = self.segments[0].0.pow(0)?;
        for (i, (w, n)) in self.segments.iter().enumerate() {
            if i > 0 {
                p = p.mul(w)?;
            }
            out.extend(std::iter::repeat(GroupElement::Zero).take(*n));
            out.push(p.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for StarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|(w, n)| format!("{w}|{n}")).collect();
        write!(f, "C*({})", parts.join(","))
    }
}

pub fn star_to_word(s: &StarWord) -> Result<CyclicWord> {
    make_word(&s.expand()?)
}

/// Result of reading a cyclic word back in star notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthDecomposition {
    pub star: StarWord,
    /// Set in weight 1, where dividing by a letter changes the class of the word.
    pub scale_dependent: bool,
}

/// Inverse of [`star_to_word`] up to rotation and a global scale.
///
/// `base_rotation` is the index (in the canonical letter list) of the nonzero
/// letter that becomes `p_0 = 1`. If that letter is zero the next nonzero
/// letter in cyclic order is used.
pub fn depth_decompose(w: &CyclicWord, base_rotation: usize) -> Result<DepthDecomposition> {
    let n = w.len();
    let letters = w.letters();
    let start = (0..n)
        .map(|k| (base_rotation + k) % n)
        .find(|&i| !letters[i].is_zero())
        .ok_or_else(|| Error::Domain("all-zero word has no star form".into()))?;
    let base_inv = letters[start].inverse()?;
    let rot: Vec<GroupElement> = (0..n).map(|i| letters[(start + i) % n].mul(&base_inv)).collect::<Result<_>>()?;
    // rot = [1, 0^{n1}, p1, 0^{n2}, p2, …, 0^{nk}, pk, 0^{n0}]
    let mut points = vec![];
    let mut runs = vec![];
    let mut run = 0usize;
    for x in &rot[1..] {
        if x.is_zero() {
            run += 1;
        } else {
            runs.push(run);
            points.push(x.clone());
            run = 0;
        }
    }
    let n0 = run;
    let mut segments = Vec::with_capacity(points.len() + 1);
    let last = points.last().cloned().unwrap_or_else(|| rot[0].clone());
    segments.push((last.inverse()?, n0));
    let mut prev = rot[0].clone();
    for (p, r) in points.iter().zip(runs) {
        segments.push((p.div(&prev)?, r));
        prev = p.clone();
    }
    Ok(DepthDecomposition { star: StarWord::new(segments)?, scale_dependent: w.weight() == 1 })
}
