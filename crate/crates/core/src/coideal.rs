//! Weight-graded certificate that a family of relations spans a coideal.
//!
//! For each weight `w` the span `R_w` of all generators inside the finite word
//! space `C_w` is computed exactly. A generator `x` passes when the image of
//! `δx` in `⊕_{a+b=w} (C_a/R_a) ∧ (C_b/R_b)` vanishes, which is equivalent to
//! `δx ∈ Σ (R_a ∧ C_b + C_a ∧ R_b)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coproduct::coproduct;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{SparseVec, Subspace};
use crate::lincomb::{LinComb, TermEntry};
use crate::rational::{self, Q};
use crate::relations::{
    distribution_relation, first_shuffle, multiplicative_invariance, scaling_relation_w1, scaling_zero_zero,
    second_shuffle_with_flip, RelationElement, RelationKind,
};
use crate::word::{make_word, CyclicWord};

/// Which generators span the relation subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// First shuffles, scaling and distribution relations.
    FirstShuffle,
    /// The above plus all second shuffles.
    Full,
}

/// Flips the sign of one quasishuffle term in one second shuffle generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub weight: usize,
    pub r: usize,
    pub s: usize,
    pub ns: Vec<usize>,
    /// Index into the enumeration order of quasishuffles.
    pub flip_index: usize,
    /// Which of the generators matching `(weight, r, s, ns)` is mutated, in
    /// enumeration order of the letters `w_1..w_k`.
    pub occurrence: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoidealOptions {
    pub max_weight: usize,
    pub restricted: bool,
    pub family: Family,
    pub mutation: Option<Mutation>,
    pub max_dim: Option<usize>,
}

impl CoidealOptions {
    pub fn new(max_weight: usize) -> Self {
        CoidealOptions { max_weight, restricted: false, family: Family::Full, mutation: None, max_dim: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub metadata: String,
    pub generator: Vec<TermEntry>,
    /// A nonzero coefficient of `δx` in the quotient, with the words spanning it.
    pub residual_pair: (Vec<String>, Vec<String>),
    pub residual_coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub weight: usize,
    pub dim_space: usize,
    pub dim_relations: usize,
    pub contained: bool,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// All canonical words with `weight + 1` letters from `letters`, sorted.
pub fn word_basis(letters: &[GroupElement], weight: usize) -> Vec<CyclicWord> {
    let n = weight + 1;
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let ws: Vec<GroupElement> = idx.iter().map(|&i| letters[i].clone()).collect();
        out.insert(make_word(&ws).expect("nonempty"));
        let mut p = 0;
        loop {
            if p == n {
                return out.into_iter().collect();
            }
            idx[p] += 1;
            if idx[p] < letters.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn tuples(letters: &[GroupElement], n: usize) -> Vec<Vec<GroupElement>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                letters.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every relation generator of the given weight, before deduplication.
pub fn generators(spec: &GroupSpec, weight: usize, opts: &CoidealOptions) -> Result<Vec<RelationElement>> {
    let n = match spec {
        GroupSpec::CyclicRootsOfUnity(n) => *n,
        GroupSpec::FreeAbelian(_) => {
            return Err(Error::Unsupported("coideal verification needs a finite group μ_N".into()))
        }
    };
    let letters = spec.letters()?;
    let elements = spec.elements()?;
    let mut out = vec![];
    if weight == 1 {
        out.push(scaling_zero_zero());
        for a in &elements {
            for b in &letters {
                for c in &letters {
                    if b.is_zero() && c.is_zero() {
                        continue;
                    }
                    out.push(scaling_relation_w1(a, b, c)?);
                }
            }
        }
    } else {
        for t in tuples(&letters, weight + 1) {
            for r in 1..weight {
                out.push(first_shuffle(&t[0], &t[1..], r)?);
            }
        }
        let gen = spec.root(1)?;
        if n > 1 {
            for w in word_basis(&letters, weight) {
                out.push(multiplicative_invariance(&w, &gen)?);
            }
        }
    }
    for l in 2..=n {
        if n % l != 0 {
            continue;
        }
        for w in word_basis(&letters, weight) {
            let divisible = w.letters().iter().all(|x| match x {
                GroupElement::Root { residue, .. } => residue % l == 0,
                _ => true,
            });
            if divisible && !(weight == 1 && w.letters()[0] == w.letters()[1]) {
                out.push(distribution_relation(spec, &w, l)?);
            }
        }
    }
    if opts.family == Family::Full {
        let mut matches = 0usize;
        for k in 2..=weight {
            for r in 1..k {
                let s = k - r;
                for inner in tuples(&elements, k) {
                    let prod = inner.iter().try_fold(spec.identity(), |a, x| a.mul(x))?;
                    let mut ws = vec![prod.inverse()?];
                    ws.extend(inner);
                    for ns in compositions(weight - k, k + 1) {
                        if ws.iter().all(|w| w.is_identity()) && ns.iter().all(|&n| n == 0) {
                            continue;
                        }
                        let flip = match &opts.mutation {
                            Some(m) if m.weight == weight && m.r == r && m.s == s && m.ns == ns => {
                                matches += 1;
                                (matches - 1 == m.occurrence).then_some(m.flip_index)
                            }
                            _ => None,
                        };
                        out.push(second_shuffle_with_flip(r, s, &ws, &ns, flip)?);
                    }
                }
            }
        }
    }
    if opts.restricted {
        for w in word_basis(&letters, weight) {
            if w.all_equal() {
                out.push(RelationElement {
                    kind: RelationKind::ScalingW1,
                    value: LinComb::from_word(w.clone()),
                    depth: w.depth().unwrap_or(0),
                    weight,
                    metadata: format!("all-equal word {w}"),
                });
            }
        }
    }
    Ok(out)
}

struct Graded {
    index: HashMap<CyclicWord, usize>,
    space: Subspace,
    basis_words: Vec<CyclicWord>,
}

impl Graded {
    fn to_sparse(&self, x: &LinComb) -> SparseVec {
        x.iter().map(|(w, c)| (self.index[w], c.clone())).collect()
    }

    fn quotient_word(&self, j: usize) -> &CyclicWord {
        // the j-th non-pivot column, in column order
        let mut seen = 0;
        for (col, w) in self.basis_words.iter().enumerate() {
            if self.space.contains(&vec![(col, Q::from_integer(1.into()))]) {
                continue;
            }
            if seen == j {
                return w;
            }
            seen += 1;
        }
        unreachable!("quotient index out of range")
    }
}

/// Image of `δx` in `⊕ (C_a/R_a) ∧ (C_b/R_b)`; keys `(a, i, b, j)` with `(a,i) < (b,j)`.
fn quotient_coproduct(
    x: &LinComb,
    proj: &BTreeMap<usize, HashMap<CyclicWord, SparseVec>>,
) -> BTreeMap<(usize, usize, usize, usize), Q> {
    let mut acc: BTreeMap<(usize, usize, usize, usize), Q> = BTreeMap::new();
    for ((u, v), c) in coproduct(x).iter() {
        let pu = &proj[&u.weight()][u];
        let pv = &proj[&v.weight()][v];
        for (i, cu) in pu {
            for (j, cv) in pv {
                let a = (u.weight(), *i);
                let b = (v.weight(), *j);
                let val = c * cu * cv;
                let (key, val) = match a.cmp(&b) {
                    std::cmp::Ordering::Equal => continue,
                    std::cmp::Ordering::Less => ((a.0, a.1, b.0, b.1), val),
                    std::cmp::Ordering::Greater => ((b.0, b.1, a.0, a.1), -val),
                };
                let e = acc.entry(key).or_insert_with(|| Q::from_integer(0.into()));
                *e += val;
            }
        }
    }
    acc.retain(|_, v| *v != Q::from_integer(0.into()));
    acc
}

/// Runs the certificate for weights `1..=max_weight`.
pub fn verify_coideal(spec: &GroupSpec, opts: &CoidealOptions) -> Result<Vec<WeightReport>> {
    if !spec.is_finite() {
        return Err(Error::Unsupported("coideal verification needs a finite group μ_N".into()));
    }
    let letters = spec.letters()?;
    let mut graded: BTreeMap<usize, Graded> = BTreeMap::new();
    let mut proj: BTreeMap<usize, HashMap<CyclicWord, SparseVec>> = BTreeMap::new();
    let mut reports = vec![];
    for weight in 1..=opts.max_weight {
        let start = Instant::now();
        let basis_words = word_basis(&letters, weight);
        let index: HashMap<CyclicWord, usize> = basis_words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut gens = generators(spec, weight, opts)?;
        let mut seen = std::collections::HashSet::new();
        gens.retain(|g| !g.value.is_zero() && seen.insert(g.value.normalized()));
        let tmp = Graded { index, space: Subspace::zero(basis_words.len()), basis_words };
        let rows: Vec<SparseVec> = gens.iter().map(|g| tmp.to_sparse(&g.value)).collect();
        let (space, basis_idx) = Subspace::span(tmp.basis_words.len(), &rows, opts.max_dim)?;
        let g = Graded { space, ..tmp };
        let p: HashMap<CyclicWord, SparseVec> = g
            .basis_words
            .par_iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), g.space.project(&vec![(i, Q::from_integer(1.into()))])))
            .collect();
        proj.insert(weight, p);
        let dim_space = g.basis_words.len();
        let dim_relations = g.space.dim();
        graded.insert(weight, g);

        let failure = basis_idx
            .par_iter()
            .map(|&gi| {
                let res = quotient_coproduct(&gens[gi].value, &proj);
                (gi, res)
            })
            .find_first(|(_, res)| !res.is_empty());
        let witness = failure.map(|(gi, res)| {
            let ((a, i, b, j), c) = res.into_iter().next().expect("nonempty");
            let gen = &gens[gi];
            Witness {
                kind: gen.kind.to_string(),
                metadata: gen.metadata.clone(),
                generator: gen.value.to_entries(),
                residual_pair: (
                    graded[&a].quotient_word(i).to_strings(),
                    graded[&b].quotient_word(j).to_strings(),
                ),
                residual_coeff: rational::to_text(&c),
            }
        });
        reports.push(WeightReport {
            weight,
            dim_space,
            dim_relations,
            contained: witness.is_none(),
            elapsed_ms: start.elapsed().as_millis() as u64,
            witness,
        });
    }
    Ok(reports)
}

/// Exact membership of a combination in the span of one family at one weight.
pub struct SpanOracle {
    graded: Graded,
}

impl SpanOracle {
    /// `kinds` filters the generators of `verify_coideal`'s enumeration.
    pub fn new(spec: &GroupSpec, weight: usize, opts: &CoidealOptions, kinds: &[RelationKind]) -> Result<Self> {
        let letters = spec.letters()?;
        let basis_words = word_basis(&letters, weight);
        let index: HashMap<CyclicWord, usize> = basis_words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let gens: Vec<RelationElement> =
            generators(spec, weight, opts)?.into_iter().filter(|g| kinds.contains(&g.kind)).collect();
        let tmp = Graded { index, space: Subspace::zero(basis_words.len()), basis_words };
        let rows: Vec<SparseVec> = gens.iter().map(|g| tmp.to_sparse(&g.value)).collect();
        let (space, _) = Subspace::span(tmp.basis_words.len(), &rows, opts.max_dim)?;
        Ok(SpanOracle { graded: Graded { space, ..tmp } })
    }

    pub fn dim(&self) -> usize {
        self.graded.space.dim()
    }

    pub fn contains(&self, x: &LinComb) -> bool {
        self.graded.space.contains(&self.graded.to_sparse(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        // necklaces with n beads in k colors
        let g = GroupSpec::mu(1).unwrap();
        assert_eq!(word_basis(&g.letters().unwrap(), 3).len(), 6);
        let g = GroupSpec::mu(2).unwrap();
        assert_eq!(word_basis(&g.letters().unwrap(), 2).len(), 11);
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn small_certificate() {
        let g = GroupSpec::mu(1).unwrap();
        let reports = verify_coideal(&g, &CoidealOptions::new(3)).unwrap();
        assert!(reports.iter().all(|r| r.contained), "{reports:?}");
    }

    #[test]
    fn free_group_rejected() {
        let g = GroupSpec::free(&["a"]).unwrap();
        assert!(matches!(verify_coideal(&g, &CoidealOptions::new(2)), Err(Error::Unsupported(_))));
    }
}
