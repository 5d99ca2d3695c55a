//! Numerical certification of relations between Hodge correlators.

use std::collections::BTreeMap;

use hodgecor_core::relations::RelationElement;
use hodgecor_core::GroupSpec;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::closed::correlator_closed;
use crate::error::{NumError, Result};
use crate::feynman::{feynman_correlator, IntegrationConfig};
use crate::types::ComplexVal;

/// Absolute tolerance for relations whose terms all have closed forms.
pub const CLOSED_TOLERANCE: f64 = 1e-9;
/// Monte Carlo terms pass within this many combined standard deviations.
pub const SIGMA_FACTOR: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Closed,
    Feynman,
    /// Closed form where one exists, Feynman integration otherwise.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermValue {
    pub coefficient: f64,
    pub points: Vec<ComplexVal>,
    pub value: f64,
    pub sigma: Option<f64>,
    pub method: Method,
}

/// Outcome of a numerical relation check. Values are normalized by `(2πi)^{w}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub parameters: BTreeMap<String, ComplexVal>,
    pub terms: Vec<TermValue>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Three combined standard deviations of the Monte Carlo terms.
    pub statistical_error: Option<f64>,
}

/// One evaluation of `Cor(zs)` normalized by `(2πi)^{n}`.
pub fn evaluate(zs: &[Complex64], method: Method, cfg: &IntegrationConfig) -> Result<(f64, Option<f64>, Method)> {
    let mc = |zs: &[Complex64]| -> Result<(f64, Option<f64>, Method)> {
        let e = feynman_correlator(zs, cfg)?;
        Ok((e.value, if zs.len() == 2 { None } else { Some(e.sigma) }, Method::Feynman))
    };
    match method {
        Method::Closed => correlator_closed(zs).map(|v| (v, None, Method::Closed)),
        Method::Feynman => mc(zs),
        Method::Auto => match correlator_closed(zs) {
            Ok(v) => Ok((v, None, Method::Closed)),
            Err(NumError::NotRepresentable(_)) => mc(zs),
            Err(e) => Err(e),
        },
    }
}

fn points_text(zs: &[Complex64]) -> String {
    let parts: Vec<String> = zs.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
    format!("({})", parts.join(","))
}

/// Evaluates `Σ c_k Cor(zs_k) - target` and builds the report.
pub fn check_combination(
    relation: &str,
    parameters: BTreeMap<String, ComplexVal>,
    terms: &[(f64, Vec<Complex64>)],
    target: f64,
    method: Method,
    cfg: &IntegrationConfig,
    tolerance: f64,
) -> Result<RelationReport> {
    let mut out = Vec::with_capacity(terms.len());
    let mut total = -target;
    let mut var = 0.0;
    let mut any_mc = false;
    for (k, (c, zs)) in terms.iter().enumerate() {
        let term_cfg = IntegrationConfig { seed: cfg.seed.wrapping_add(k as u64), ..cfg.clone() };
        let (value, sigma, used) = evaluate(zs, method, &term_cfg).map_err(|e| match e {
            NumError::NotRepresentable(msg) | NumError::Unsupported(msg) => {
                NumError::Unsupported(format!("term {}: {msg}", points_text(zs)))
            }
            other => other,
        })?;
        total += c * value;
        if let Some(s) = sigma {
            any_mc = true;
            var += c * c * s * s;
        }
        out.push(TermValue {
            coefficient: *c,
            points: zs.iter().map(|&z| z.into()).collect(),
            value,
            sigma,
            method: used,
        });
    }
    let statistical_error = any_mc.then(|| SIGMA_FACTOR * var.sqrt());
    let residual = total.abs();
    let pass = residual.is_finite() && residual <= tolerance + statistical_error.unwrap_or(0.0);
    Ok(RelationReport { relation: relation.to_string(), parameters, terms: out, residual, tolerance, pass, statistical_error })
}

/// Checks a symbolic relation element after embedding its letters into ℂ.
pub fn check_relation_element(
    spec: &GroupSpec,
    rel: &RelationElement,
    assignment: &BTreeMap<String, Complex64>,
    method: Method,
    cfg: &IntegrationConfig,
) -> Result<RelationReport> {
    let mut terms = Vec::new();
    for (w, c) in rel.value.iter() {
        let zs = w
            .letters()
            .iter()
            .map(|x| spec.embed_complex(x, Some(assignment)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let c = c.to_f64().ok_or_else(|| NumError::Range("coefficient not representable".into()))?;
        terms.push((c, zs));
    }
    let params = assignment.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
    check_combination(&rel.kind.to_string(), params, &terms, 0.0, method, cfg, CLOSED_TOLERANCE)
}

/// A relation with a name and complex parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "kebab-case")]
pub enum NamedRelation {
    /// `Σ 𝓛_2` over the five arguments of the pentagon.
    FiveTerm { w1: ComplexVal, w2: ComplexVal },
    /// `C(x) + C(1-x) + C(1-x^{-1}) = C(1)` with `C(z) = Cor(1,0,0,z)`.
    Gr27 { x: ComplexVal },
    /// `Cor(0,x,1,y)` against its expression through `C`.
    Gr29 { x: ComplexVal, y: ComplexVal },
    /// The right side of `Gr29` against the lower-depth reduction of `Cor(x,1,y,0)`.
    Gr29Reduced { x: ComplexVal, y: ComplexVal },
    /// `Cor(z_1,…,z_n,0)` against its lower-depth reduction.
    Gr28 { zs: Vec<ComplexVal> },
    /// `Σ_σ Cor(ε_σ1, ε_σ1+ε_σ2, …, 0)` over `(m,n)`-shuffles: zero for `m+n` even,
    /// otherwise compared with the same sum at `reference`.
    AdditiveShuffle { m: usize, n: usize, eps: Vec<ComplexVal>, reference: Option<Vec<ComplexVal>> },
    /// `log|x-y| = ½ Σ log|±√x ∓ √y|`.
    DistributionW1 { x: ComplexVal, y: ComplexVal },
    /// `Σ_{σ∈Σ_{r,n-r}} Cor(x_0, x_σ)`.
    FirstShuffle { x0: ComplexVal, xs: Vec<ComplexVal>, r: usize },
    Rotation { zs: Vec<ComplexVal> },
    Reversal { zs: Vec<ComplexVal> },
    AdditiveShift { zs: Vec<ComplexVal>, a: ComplexVal },
    MultiplicativeShift { zs: Vec<ComplexVal>, a: ComplexVal },
    /// `Cor(1,0,0,1-t)` against `Cor(1,0,0,1)`.
    Continuity { t: ComplexVal },
}

fn c(z: ComplexVal) -> Complex64 {
    z.into()
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn depth_one_word(z: Complex64) -> Vec<Complex64> {
    vec![one(), zero(), zero(), z]
}

/// `(m, n)`-shuffles of `0..m` and `m..m+n`, in lexicographic order of positions.
pub fn shuffles(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, j: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == m && j == n {
            out.push(cur.clone());
            return;
        }
        if i < m {
            cur.push(i);
            go(i + 1, j, m, n, cur, out);
            cur.pop();
        }
        if j < n {
            cur.push(m + j);
            go(i, j + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, m, n, &mut Vec::new(), &mut out);
    out
}

fn additive_shuffle_terms(m: usize, n: usize, eps: &[Complex64], sign: f64) -> Vec<(f64, Vec<Complex64>)> {
    shuffles(m, n)
        .into_iter()
        .map(|s| {
            let mut acc = zero();
            let mut word: Vec<Complex64> = s
                .iter()
                .map(|&k| {
                    acc += eps[k];
                    acc
                })
                .collect();
            word.push(zero());
            (sign, word)
        })
        .collect()
}

/// The right side of the lower-depth reduction of `Cor(z_1,…,z_n,0)`, as signed terms.
pub fn gr28_rhs(zs: &[Complex64]) -> Vec<(f64, Vec<Complex64>)> {
    let n = zs.len();
    let q = zs[0] / zs[n - 1];
    let mut out = Vec::new();
    for i in 0..n {
        let mut w: Vec<Complex64> = zs[..i].to_vec();
        w.push(zs[i]);
        w.extend(zs[i..].iter().map(|z| z * q));
        out.push((1.0, w));
    }
    for i in 1..n {
        let mut w: Vec<Complex64> = zs[..i].to_vec();
        w.push(zero());
        w.extend(zs[i..].iter().map(|z| z * q));
        out.push((-1.0, w));
    }
    let mut w = vec![zs[0], zs[0] * q];
    w.resize(n + 1, zero());
    out.push((-1.0, w));
    out
}

fn gr29_rhs(x: Complex64, y: Complex64) -> Vec<(f64, Vec<Complex64>)> {
    let o = one();
    vec![
        (-1.0, depth_one_word(o - x.inv())),
        (-1.0, depth_one_word(o - y.inv())),
        (-1.0, depth_one_word(y / x)),
        (-1.0, depth_one_word((o - y) / (o - x))),
        (1.0, depth_one_word((o - y.inv()) / (o - x.inv()))),
        (1.0, depth_one_word(o)),
    ]
}

fn negate(terms: Vec<(f64, Vec<Complex64>)>) -> Vec<(f64, Vec<Complex64>)> {
    terms.into_iter().map(|(c, w)| (-c, w)).collect()
}

fn named(list: &[(&str, ComplexVal)]) -> BTreeMap<String, ComplexVal> {
    list.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn indexed(prefix: &str, zs: &[ComplexVal]) -> BTreeMap<String, ComplexVal> {
    zs.iter().enumerate().map(|(i, z)| (format!("{prefix}{i}"), *z)).collect()
}

impl NamedRelation {
    pub fn id(&self) -> &'static str {
        match self {
            NamedRelation::FiveTerm { .. } => "five-term",
            NamedRelation::Gr27 { .. } => "gr27",
            NamedRelation::Gr29 { .. } => "gr29",
            NamedRelation::Gr29Reduced { .. } => "gr29-reduced",
            NamedRelation::Gr28 { .. } => "gr28",
            NamedRelation::AdditiveShuffle { .. } => "additive-shuffle",
            NamedRelation::DistributionW1 { .. } => "distribution-w1",
            NamedRelation::FirstShuffle { .. } => "first-shuffle",
            NamedRelation::Rotation { .. } => "rotation",
            NamedRelation::Reversal { .. } => "reversal",
            NamedRelation::AdditiveShift { .. } => "additive-shift",
            NamedRelation::MultiplicativeShift { .. } => "multiplicative-shift",
            NamedRelation::Continuity { .. } => "continuity",
        }
    }

    /// Signed terms, the target value and the reported parameters.
    pub fn terms(&self) -> Result<(Vec<(f64, Vec<Complex64>)>, BTreeMap<String, ComplexVal>)> {
        let l2 = |z: Complex64| vec![zero(), z, one()];
        Ok(match self {
            NamedRelation::FiveTerm { w1, w2 } => {
                let (a, b) = (c(*w1), c(*w2));
                let ab = one() - a * b;
                let args = [(one() - a) / ab, (one() - b) / ab, ab, a, b];
                (args.iter().map(|&z| (1.0, l2(z))).collect(), named(&[("w1", *w1), ("w2", *w2)]))
            }
            NamedRelation::Gr27 { x } => {
                let x = c(*x);
                let terms = vec![
                    (1.0, depth_one_word(x)),
                    (1.0, depth_one_word(one() - x)),
                    (1.0, depth_one_word(one() - x.inv())),
                    (-1.0, depth_one_word(one())),
                ];
                (terms, named(&[("x", x.into())]))
            }
            NamedRelation::Gr29 { x, y } => {
                let (xv, yv) = (c(*x), c(*y));
                let mut terms = vec![(1.0, vec![zero(), xv, one(), yv])];
                terms.extend(negate(gr29_rhs(xv, yv)));
                (terms, named(&[("x", *x), ("y", *y)]))
            }
            NamedRelation::Gr29Reduced { x, y } => {
                let (xv, yv) = (c(*x), c(*y));
                let mut terms = gr29_rhs(xv, yv);
                terms.extend(negate(gr28_rhs(&[xv, one(), yv])));
                (terms, named(&[("x", *x), ("y", *y)]))
            }
            NamedRelation::Gr28 { zs } => {
                if zs.len() < 2 {
                    return Err(NumError::Domain("the reduction needs n ≥ 2 points".into()));
                }
                let v: Vec<Complex64> = zs.iter().map(|&z| c(z)).collect();
                if v.iter().any(|z| *z == zero()) {
                    return Err(NumError::Domain("the reduction needs nonzero z_i".into()));
                }
                let mut lhs = v.clone();
                lhs.push(zero());
                let mut terms = vec![(1.0, lhs)];
                terms.extend(negate(gr28_rhs(&v)));
                (terms, indexed("z", zs))
            }
            NamedRelation::AdditiveShuffle { m, n, eps, reference } => {
                if *m == 0 || *n == 0 || eps.len() != m + n {
                    return Err(NumError::Domain("additive shuffle needs m, n ≥ 1 and m+n values".into()));
                }
                let v: Vec<Complex64> = eps.iter().map(|&z| c(z)).collect();
                let mut terms = additive_shuffle_terms(*m, *n, &v, 1.0);
                let mut params = indexed("eps", eps);
                if (m + n) % 2 == 1 {
                    let r = reference.as_ref().ok_or_else(|| {
                        NumError::Domain("odd m+n needs a reference point to test constancy".into())
                    })?;
                    if r.len() != m + n {
                        return Err(NumError::Domain("reference needs m+n values".into()));
                    }
                    let rv: Vec<Complex64> = r.iter().map(|&z| c(z)).collect();
                    terms.extend(additive_shuffle_terms(*m, *n, &rv, -1.0));
                    params.extend(indexed("ref", r));
                }
                (terms, params)
            }
            NamedRelation::DistributionW1 { x, y } => {
                let (sx, sy) = (c(*x).sqrt(), c(*y).sqrt());
                let mut terms = vec![(1.0, vec![c(*x), c(*y)])];
                for s1 in [1.0, -1.0] {
                    for s2 in [1.0, -1.0] {
                        terms.push((-0.5, vec![sx * s1, sy * s2]));
                    }
                }
                (terms, named(&[("x", *x), ("y", *y)]))
            }
            NamedRelation::FirstShuffle { x0, xs, r } => {
                if *r == 0 || *r >= xs.len() {
                    return Err(NumError::Domain("first shuffle needs 0 < r < n".into()));
                }
                let v: Vec<Complex64> = xs.iter().map(|&z| c(z)).collect();
                let terms = shuffles(*r, xs.len() - r)
                    .into_iter()
                    .map(|s| {
                        let mut w = vec![c(*x0)];
                        w.extend(s.iter().map(|&k| v[k]));
                        (1.0, w)
                    })
                    .collect();
                let mut params = indexed("x", xs);
                params.insert("x0".into(), *x0);
                (terms, params)
            }
            NamedRelation::Rotation { zs } => {
                let v: Vec<Complex64> = zs.iter().map(|&z| c(z)).collect();
                let mut rot = v[1..].to_vec();
                rot.push(v[0]);
                (vec![(1.0, v), (-1.0, rot)], indexed("z", zs))
            }
            NamedRelation::Reversal { zs } => {
                let v: Vec<Complex64> = zs.iter().map(|&z| c(z)).collect();
                let n = v.len() - 1;
                let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
                let rev: Vec<Complex64> = v.iter().rev().copied().collect();
                (vec![(1.0, v), (-sign, rev)], indexed("z", zs))
            }
            NamedRelation::AdditiveShift { zs, a } => {
                let v: Vec<Complex64> = zs.iter().map(|&z| c(z)).collect();
                let shifted = v.iter().map(|z| z + c(*a)).collect();
                let mut params = indexed("z", zs);
                params.insert("a".into(), *a);
                (vec![(1.0, v), (-1.0, shifted)], params)
            }
            NamedRelation::MultiplicativeShift { zs, a } => {
                if zs.len() < 3 {
                    return Err(NumError::Domain("multiplicative invariance needs weight > 1".into()));
                }
                if c(*a) == zero() {
                    return Err(NumError::Domain("scaling factor must be nonzero".into()));
                }
                let v: Vec<Complex64> = zs.iter().map(|&z| c(z)).collect();
                let scaled = v.iter().map(|z| z * c(*a)).collect();
                let mut params = indexed("z", zs);
                params.insert("a".into(), *a);
                (vec![(1.0, v), (-1.0, scaled)], params)
            }
            NamedRelation::Continuity { t } => {
                let terms = vec![(1.0, depth_one_word(one() - c(*t))), (-1.0, depth_one_word(one()))];
                (terms, named(&[("t", *t)]))
            }
        })
    }
}

/// Checks a named relation; closed-form relations use [`CLOSED_TOLERANCE`].
pub fn check_named(rel: &NamedRelation, method: Method, cfg: &IntegrationConfig) -> Result<RelationReport> {
    let (terms, params) = rel.terms()?;
    let tolerance = match rel {
        // the modulus of continuity of 𝓛_3 at 1 is of order |t| log²|t|
        NamedRelation::Continuity { t } => {
            let r = c(*t).norm();
            CLOSED_TOLERANCE + r * (1.0 + r.ln().powi(2))
        }
        _ => CLOSED_TOLERANCE,
    };
    check_combination(rel.id(), params, &terms, 0.0, method, cfg, tolerance)
}
