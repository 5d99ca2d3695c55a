//! Abelian coefficient groups with an adjoined absorbing zero.
//!
//! Two backends are supported: the roots of unity `μ_N`, stored as residues
//! mod `N`, and free abelian groups on named symbols, stored as sparse
//! exponent maps.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which group `G` the letters of a word live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    CyclicRootsOfUnity(u32),
    FreeAbelian(Vec<String>),
}

/// An element of `G ∪ {0}`.
///
/// The derived order puts `Zero` below every group element, orders roots of
/// unity by residue and free elements lexicographically by their sorted
/// exponent entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Zero,
    Root { order: u32, residue: u32 },
    Free(BTreeMap<String, i64>),
}

impl GroupSpec {
    pub fn mu(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("μ_N requires N ≥ 1".into()));
        }
        Ok(GroupSpec::CyclicRootsOfUnity(n))
    }

    pub fn free<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if !is_symbol(s) {
                return Err(Error::Config(format!("invalid symbol name {s:?}")));
            }
            if !seen.insert(s.to_string()) {
                return Err(Error::Config(format!("duplicate symbol {s:?}")));
            }
            out.push(s.to_string());
        }
        Ok(GroupSpec::FreeAbelian(out))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::CyclicRootsOfUnity(_))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::Zero
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::CyclicRootsOfUnity(n) => GroupElement::Root { order: *n, residue: 0 },
            GroupSpec::FreeAbelian(_) => GroupElement::Free(BTreeMap::new()),
        }
    }

    /// The residue-`k` root of unity `exp(2πik/N)`.
    pub fn root(&self, k: i64) -> Result<GroupElement> {
        match self {
            GroupSpec::CyclicRootsOfUnity(n) => Ok(GroupElement::Root {
                order: *n,
                residue: k.rem_euclid(*n as i64) as u32,
            }),
            GroupSpec::FreeAbelian(_) => Err(Error::Unsupported("root() on a free abelian group".into())),
        }
    }

    /// The generator named `name`, raised to `exp`.
    pub fn symbol(&self, name: &str, exp: i64) -> Result<GroupElement> {
        match self {
            GroupSpec::FreeAbelian(syms) if syms.iter().any(|s| s == name) => {
                let mut m = BTreeMap::new();
                if exp != 0 {
                    m.insert(name.to_string(), exp);
                }
                Ok(GroupElement::Free(m))
            }
            GroupSpec::FreeAbelian(_) => Err(Error::Config(format!("unknown symbol {name:?}"))),
            GroupSpec::CyclicRootsOfUnity(_) => Err(Error::Unsupported("symbol() on μ_N".into())),
        }
    }

    /// All nonzero elements, for finite groups.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        match self {
            GroupSpec::CyclicRootsOfUnity(n) => {
                Ok((0..*n).map(|r| GroupElement::Root { order: *n, residue: r }).collect())
            }
            GroupSpec::FreeAbelian(_) => Err(Error::Unsupported("free abelian groups are infinite".into())),
        }
    }

    /// `G ∪ {0}` for finite groups, zero first.
    pub fn letters(&self) -> Result<Vec<GroupElement>> {
        let mut v = vec![GroupElement::Zero];
        v.extend(self.elements()?);
        Ok(v)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (_, GroupElement::Zero) => true,
            (GroupSpec::CyclicRootsOfUnity(n), GroupElement::Root { order, residue }) => order == n && residue < n,
            (GroupSpec::FreeAbelian(syms), GroupElement::Free(m)) => {
                m.iter().all(|(k, e)| *e != 0 && syms.iter().any(|s| s == k))
            }
            _ => false,
        }
    }

    /// Parses the textual element syntax: `0`, `w^k`, `1`, `a^2*b^-1`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        if t == "0" {
            return Ok(GroupElement::Zero);
        }
        if t == "1" {
            return Ok(self.identity());
        }
        match self {
            GroupSpec::CyclicRootsOfUnity(n) => {
                let body = t
                    .strip_prefix("w^")
                    .ok_or_else(|| Error::Parse(format!("expected w^k, got {t:?}")))?;
                let k: i64 = body.parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
                Ok(GroupElement::Root { order: *n, residue: k.rem_euclid(*n as i64) as u32 })
            }
            GroupSpec::FreeAbelian(_) => {
                let mut acc = self.identity();
                for factor in t.split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => {
                            let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                            (n, e)
                        }
                        None => (factor, 1),
                    };
                    if !is_symbol(name) {
                        return Err(Error::Parse(format!("bad factor {factor:?}")));
                    }
                    acc = acc.mul(&self.symbol(name, exp)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// The multiset `{y : y^l = x}`; `0` is returned `l` times.
    pub fn lth_roots(&self, x: &GroupElement, l: u32) -> Result<Vec<GroupElement>> {
        let n = match self {
            GroupSpec::CyclicRootsOfUnity(n) => *n,
            GroupSpec::FreeAbelian(_) => {
                return Err(Error::Unsupported("lth_roots needs a finite group μ_N".into()))
            }
        };
        if l == 0 || n % l != 0 {
            return Err(Error::Domain(format!("l = {l} does not divide N = {n}")));
        }
        match x {
            GroupElement::Zero => Ok(vec![GroupElement::Zero; l as usize]),
            GroupElement::Root { order, residue } if *order == n => {
                if residue % l != 0 {
                    return Err(Error::Domain(format!("w^{residue} is not an {l}-th power in μ_{n}")));
                }
                let step = n / l;
                let base = residue / l;
                Ok((0..l).map(|j| GroupElement::Root { order: n, residue: base + j * step }).collect())
            }
            _ => Err(Error::Config("element does not belong to this group".into())),
        }
    }

    /// Embeds an element into ℂ. Free groups need a value for every symbol used.
    pub fn embed_complex(
        &self,
        x: &GroupElement,
        assignment: Option<&BTreeMap<String, Complex64>>,
    ) -> Result<Complex64> {
        if !self.contains(x) {
            return Err(Error::Config("element does not belong to this group".into()));
        }
        match x {
            GroupElement::Zero => Ok(Complex64::new(0.0, 0.0)),
            GroupElement::Root { order, residue } => {
                let theta = 2.0 * std::f64::consts::PI * (*residue as f64) / (*order as f64);
                Ok(Complex64::from_polar(1.0, theta))
            }
            GroupElement::Free(m) => {
                let mut z = Complex64::new(1.0, 0.0);
                for (sym, e) in m {
                    let v = assignment
                        .and_then(|a| a.get(sym))
                        .ok_or_else(|| Error::Config(format!("no complex value assigned to {sym:?}")))?;
                    z *= v.powi(*e as i32);
                }
                Ok(z)
            }
        }
    }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, GroupElement::Zero)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Zero => false,
            GroupElement::Root { residue, .. } => *residue == 0,
            GroupElement::Free(m) => m.is_empty(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        use GroupElement::*;
        match (self, other) {
            (Zero, Zero) => Ok(Zero),
            (Zero, Root { .. }) | (Root { .. }, Zero) | (Zero, Free(_)) | (Free(_), Zero) => Ok(Zero),
            (Root { order: n, residue: a }, Root { order: m, residue: b }) => {
                if n != m {
                    return Err(Error::Config(format!("cannot multiply elements of μ_{n} and μ_{m}")));
                }
                Ok(Root { order: *n, residue: ((*a as u64 + *b as u64) % *n as u64) as u32 })
            }
            (Free(a), Free(b)) => {
                let mut m = a.clone();
                for (k, e) in b {
                    let slot = m.entry(k.clone()).or_insert(0);
                    *slot += e;
                    if *slot == 0 {
                        m.remove(k);
                    }
                }
                Ok(Free(m))
            }
            _ => Err(Error::Config("cannot multiply elements of different groups".into())),
        }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        self.pow(-1)
    }

    /// `self^k`; negative powers of zero are a domain error, `0^0` is zero.
    pub fn pow(&self, k: i64) -> Result<GroupElement> {
        match self {
            GroupElement::Zero if k < 0 => Err(Error::Domain("zero is not invertible".into())),
            GroupElement::Zero => Ok(GroupElement::Zero),
            GroupElement::Root { order, residue } => Ok(GroupElement::Root {
                order: *order,
                residue: ((*residue as i64 * k).rem_euclid(*order as i64)) as u32,
            }),
            GroupElement::Free(m) => {
                if k == 0 {
                    return Ok(GroupElement::Free(BTreeMap::new()));
                }
                Ok(GroupElement::Free(m.iter().map(|(s, e)| (s.clone(), e * k)).collect()))
            }
        }
    }

    /// `self / other` for nonzero `other`.
    pub fn div(&self, other: &GroupElement) -> Result<GroupElement> {
        self.mul(&other.inverse()?)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Zero => write!(f, "0"),
            GroupElement::Root { residue, .. } => write!(f, "w^{residue}"),
            GroupElement::Free(m) if m.is_empty() => write!(f, "1"),
            GroupElement::Free(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}
