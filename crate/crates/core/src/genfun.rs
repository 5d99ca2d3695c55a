//! Weight-truncated generating functions `Λ*` and `Λ` in formal variables.
//!
//! A series is a sparse map from exponent vectors (aligned with `variables`)
//! to linear combinations of cyclic words. Products and substitutions are
//! truncated at `max_total_degree`; since all exponents are nonnegative the
//! kept coefficients are exact.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coideal::{CoidealOptions, SpanOracle};
use crate::coproduct::coproduct;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::lincomb::{LinComb, TermEntry, WedgeComb};
use crate::quasishuffle::enumerate_quasishuffles;
use crate::rational::{q, Q};
use crate::relations::RelationKind;
use crate::scaling::{scaling_normal_form, wedge_normal_form};
use crate::star::{star_to_word, StarWord};
use crate::word::make_word;

pub type Exponent = Vec<u32>;

/// A formal power series with `LinComb` coefficients, truncated in total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedGenFun {
    pub variables: Vec<String>,
    /// Segment letters `w_i` when built by [`lambda_star`]; empty otherwise.
    pub letters: Vec<GroupElement>,
    /// Per segment, the multiset of variables; empty for derived series.
    pub slot_assignment: Vec<Vec<String>>,
    pub coeffs: BTreeMap<Exponent, LinComb>,
    pub max_total_degree: u32,
}

/// Wedge-valued series, the target of [`genfun_coproduct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedWedge {
    pub variables: Vec<String>,
    pub coeffs: BTreeMap<Exponent, WedgeComb>,
    pub max_total_degree: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GenFunEntry {
    pub exponent_vector: Vec<u32>,
    pub lincomb: Vec<TermEntry>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All vectors of length `m` with entries summing to at most `max`.
pub fn exponents_upto(m: usize, max: u32) -> Vec<Exponent> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(m, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(m, max, &mut Vec::with_capacity(m), &mut out);
    out
}

type Poly = BTreeMap<Exponent, Q>;

fn poly_mul(a: &Poly, b: &Poly, max: u32) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if degree(&e) > max {
                continue;
            }
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn linear_poly(nvars: usize, form: &[(usize, Q)]) -> Poly {
    let mut p = Poly::new();
    for (i, c) in form {
        let mut e = vec![0; nvars];
        e[*i] = 1;
        *p.entry(e).or_insert_with(Q::zero) += c;
    }
    p.retain(|_, c| !c.is_zero());
    p
}

fn one_poly(nvars: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; nvars], Q::one());
    p
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

fn reembed(e: &[u32], from: &[String], to: &[String]) -> Exponent {
    let mut out = vec![0; to.len()];
    for (x, name) in e.iter().zip(from) {
        let j = to.iter().position(|v| v == name).expect("target contains all variables");
        out[j] = *x;
    }
    out
}

impl TruncatedGenFun {
    pub fn zero(variables: Vec<String>, max_total_degree: u32) -> Self {
        TruncatedGenFun { variables, letters: vec![], slot_assignment: vec![], coeffs: BTreeMap::new(), max_total_degree }
    }

    /// The series with the single coefficient `x` at degree 0.
    pub fn constant(x: LinComb, variables: Vec<String>, max_total_degree: u32) -> Self {
        let mut f = Self::zero(variables, max_total_degree);
        f.add_at(vec![0; f.variables.len()], &x, &Q::one());
        f
    }

    fn add_at(&mut self, e: Exponent, x: &LinComb, c: &Q) {
        if degree(&e) > self.max_total_degree {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_default();
        slot.add_scaled(x, c);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the monomial given by `(variable, power)` pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> LinComb {
        let mut e = vec![0; self.variables.len()];
        for (name, p) in monomial {
            match self.variables.iter().position(|v| v == name) {
                Some(j) => e[j] += p,
                None if *p == 0 => {}
                None => return LinComb::new(),
            }
        }
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// The same series over a larger ordered variable list.
    pub fn with_variables(&self, variables: &[String]) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, x)| (reembed(e, &self.variables, variables), x.clone())).collect();
        TruncatedGenFun { variables: variables.to_vec(), coeffs, ..self.clone() }
    }

    /// `self + c·other`, over the union of the variables.
    pub fn add_scaled(&self, other: &TruncatedGenFun, c: &Q) -> Self {
        let vars = union_vars(&self.variables, &other.variables);
        let max = self.max_total_degree.min(other.max_total_degree);
        let mut out = Self::zero(vars.clone(), max);
        for (e, x) in &self.with_variables(&vars).coeffs {
            out.add_at(e.clone(), x, &Q::one());
        }
        for (e, x) in &other.with_variables(&vars).coeffs {
            out.add_at(e.clone(), x, c);
        }
        out
    }

    pub fn sub(&self, other: &TruncatedGenFun) -> Self {
        self.add_scaled(other, &q(-1))
    }

    /// Product with a linear form `Σ c_v v`.
    pub fn mul_linear(&self, form: &[(&str, Q)]) -> Self {
        let mut vars = self.variables.clone();
        for (v, _) in form {
            if !vars.iter().any(|x| x == v) {
                vars.push(v.to_string());
            }
        }
        let base = self.with_variables(&vars);
        let mut out = Self::zero(vars.clone(), self.max_total_degree);
        for (e, x) in &base.coeffs {
            for (v, c) in form {
                let j = vars.iter().position(|x| x == v).expect("added above");
                let mut e2 = e.clone();
                e2[j] += 1;
                out.add_at(e2, x, c);
            }
        }
        out
    }

    /// Substitutes for each current variable a linear form in `new_vars`.
    pub fn substitute(&self, new_vars: &[String], forms: &[Vec<(usize, Q)>]) -> Result<Self> {
        if forms.len() != self.variables.len() {
            return Err(Error::Config("one linear form per variable is required".into()));
        }
        let m = new_vars.len();
        let max = self.max_total_degree;
        let linear: Vec<Poly> = forms.iter().map(|f| linear_poly(m, f)).collect();
        // powers[i][p] = (form_i)^p
        let mut powers: Vec<Vec<Poly>> = linear.iter().map(|l| vec![one_poly(m), l.clone()]).collect();
        for (i, l) in linear.iter().enumerate() {
            for p in 2..=max as usize {
                let next = poly_mul(&powers[i][p - 1], l, max);
                powers[i].push(next);
            }
        }
        let mut out = Self::zero(new_vars.to_vec(), max);
        for (e, x) in &self.coeffs {
            let mut p = one_poly(m);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    p = poly_mul(&p, &powers[i][k as usize], max);
                }
            }
            for (e2, c) in p {
                out.add_at(e2, x, &c);
            }
        }
        Ok(out)
    }

    /// Drops all terms in which `var` occurs, then removes `var`.
    pub fn set_zero(&self, var: &str) -> Self {
        let Some(j) = self.variables.iter().position(|v| v == var) else { return self.clone() };
        let mut vars = self.variables.clone();
        vars.remove(j);
        let mut out = Self::zero(vars, self.max_total_degree);
        for (e, x) in &self.coeffs {
            if e[j] == 0 {
                let mut e2 = e.clone();
                e2.remove(j);
                out.add_at(e2, x, &Q::one());
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&LinComb) -> LinComb) -> Self {
        let mut out = Self::zero(self.variables.clone(), self.max_total_degree);
        for (e, x) in &self.coeffs {
            out.add_at(e.clone(), &f(x), &Q::one());
        }
        out
    }

    /// Coefficients reduced modulo the scaling relations.
    pub fn scaling_normal_form(&self) -> Self {
        self.map_coeffs(scaling_normal_form)
    }

    pub fn to_entries(&self) -> Vec<GenFunEntry> {
        self.coeffs
            .iter()
            .map(|(e, x)| GenFunEntry { exponent_vector: e.clone(), lincomb: x.to_entries() })
            .collect()
    }
}

impl TruncatedWedge {
    pub fn zero(variables: Vec<String>, max_total_degree: u32) -> Self {
        TruncatedWedge { variables, coeffs: BTreeMap::new(), max_total_degree }
    }

    fn add_at(&mut self, e: Exponent, x: &WedgeComb, c: &Q) {
        if degree(&e) > self.max_total_degree {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_default();
        slot.add_scaled(x, c);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Adds `c · (a ∧ b)`; both series must be over `self.variables`.
    pub fn add_wedge(&mut self, a: &TruncatedGenFun, b: &TruncatedGenFun, c: &Q) {
        let a = a.with_variables(&self.variables);
        let b = b.with_variables(&self.variables);
        for (ea, xa) in &a.coeffs {
            for (eb, xb) in &b.coeffs {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if degree(&e) <= self.max_total_degree {
                    self.add_at(e, &WedgeComb::wedge(xa, xb), c);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map_coeffs(&self, f: impl Fn(&WedgeComb) -> WedgeComb) -> Self {
        let mut out = Self::zero(self.variables.clone(), self.max_total_degree);
        for (e, x) in &self.coeffs {
            out.add_at(e.clone(), &f(x), &Q::one());
        }
        out
    }

    pub fn sub(&self, other: &TruncatedWedge) -> Self {
        let mut out = self.clone();
        for (e, x) in &other.coeffs {
            out.add_at(reembed(e, &other.variables, &self.variables), x, &q(-1));
        }
        out
    }
}

/// `Λ*⟨w_0, …, w_k; S_0, …, S_k⟩` with multiset slots `S_i`.
///
/// The coefficient of `Π t_{i,j}^{n_{i,j}}` is `C*(w_0|N_0, …, w_k|N_k)` with
/// `N_i = n_{i,1} + 1 + n_{i,2} + … + 1 + n_{i,d_i}`.
pub fn lambda_star(ws: &[GroupElement], slots: &[Vec<String>], max_degree: u32) -> Result<TruncatedGenFun> {
    if ws.len() != slots.len() {
        return Err(Error::Config("one slot per segment is required".into()));
    }
    if slots.iter().any(|s| s.is_empty()) {
        return Err(Error::Domain("slots must be nonempty multisets".into()));
    }
    StarWord::new(ws.iter().map(|w| (w.clone(), 0)).collect())?;
    let mut variables: Vec<String> = vec![];
    for v in slots.iter().flatten() {
        if !variables.contains(v) {
            variables.push(v.clone());
        }
    }
    let flat: Vec<(usize, usize)> = slots
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |v| (i, v)))
        .map(|(i, v)| (i, variables.iter().position(|x| x == v).expect("collected")))
        .collect();
    let terms: Vec<(Exponent, StarWord)> = exponents_upto(flat.len(), max_degree)
        .into_par_iter()
        .map(|ns| {
            let mut big_n: Vec<usize> = slots.iter().map(|s| s.len() - 1).collect();
            let mut e = vec![0; variables.len()];
            for ((seg, var), n) in flat.iter().zip(&ns) {
                big_n[*seg] += *n as usize;
                e[*var] += n;
            }
            let star = StarWord::new(ws.iter().cloned().zip(big_n).collect()).expect("checked above");
            (e, star)
        })
        .collect();
    let mut f = TruncatedGenFun::zero(variables, max_degree);
    f.letters = ws.to_vec();
    f.slot_assignment = slots.to_vec();
    for (e, star) in terms {
        f.add_at(e, &LinComb::from_word(star_to_word(&star)?), &Q::one());
    }
    Ok(f)
}

/// Singleton slots `{t_0}, …, {t_k}`.
pub fn singleton_slots(ts: &[&str]) -> Vec<Vec<String>> {
    ts.iter().map(|t| vec![t.to_string()]).collect()
}

/// `Λ*(…{t}⊔T…) − Λ*(…{u}⊔T…) − sign·(t−u)·Λ*(…{t,u}⊔T…)` on segment `seg`.
///
/// `slots[seg]` holds `T` (possibly empty); `sign = 1` gives the true identity.
pub fn multiset_identity_residual(
    ws: &[GroupElement],
    slots: &[Vec<String>],
    seg: usize,
    t: &str,
    u: &str,
    max_degree: u32,
    sign: i64,
) -> Result<TruncatedGenFun> {
    let with = |extra: &[&str]| {
        let mut s = slots.to_vec();
        s[seg].extend(extra.iter().map(|x| x.to_string()));
        s
    };
    let a = lambda_star(ws, &with(&[t]), max_degree)?;
    let b = lambda_star(ws, &with(&[u]), max_degree)?;
    let c = lambda_star(ws, &with(&[t, u]), max_degree)?;
    let rhs = c.mul_linear(&[(t, q(sign)), (u, q(-sign))]);
    Ok(a.sub(&b).sub(&rhs))
}

pub fn check_multiset_identity(
    ws: &[GroupElement],
    slots: &[Vec<String>],
    seg: usize,
    t: &str,
    u: &str,
    max_degree: u32,
) -> Result<bool> {
    Ok(multiset_identity_residual(ws, slots, seg, t, u, max_degree, 1)?.is_zero())
}

/// The dual series `Λ⟨x_0, …, x_k; t_0, …, t_k⟩` under `Σ t_i = 0`.
///
/// Coefficients are `C(x_0, 0^{n_0}, x_1, …, x_k, 0^{n_k})` with monomials
/// `Π (t_0 + … + t_i)^{n_i}`. The constraint is imposed by eliminating
/// `t_k`; the factor for `i = k` then vanishes unless `n_k = 0`, and the
/// result lives in `t_0, …, t_{k-1}`.
pub fn lambda_dual(xs: &[GroupElement], ts: &[&str], max_degree: u32) -> Result<TruncatedGenFun> {
    if xs.is_empty() || xs.len() != ts.len() {
        return Err(Error::Config("lambda_dual needs len(xs) = len(ts) ≥ 1".into()));
    }
    let k = xs.len() - 1;
    let vars: Vec<String> = ts[..k].iter().map(|t| t.to_string()).collect();
    let partial: Vec<Poly> = (0..k).map(|i| linear_poly(k, &(0..=i).map(|j| (j, Q::one())).collect::<Vec<_>>())).collect();
    let mut out = TruncatedGenFun::zero(vars, max_degree);
    for ns in exponents_upto(k, max_degree) {
        let mut letters = vec![];
        let mut p = one_poly(k);
        for (i, x) in xs.iter().enumerate() {
            letters.push(x.clone());
            if i < k {
                letters.extend(std::iter::repeat(GroupElement::Zero).take(ns[i] as usize));
                for _ in 0..ns[i] {
                    p = poly_mul(&p, &partial[i], max_degree);
                }
            }
        }
        let w = LinComb::from_word(make_word(&letters)?);
        for (e, c) in p {
            out.add_at(e, &w, &c);
        }
    }
    Ok(out)
}

/// Difference of the two sides of `Λ*⟨w; t⟩ = Λ⟨1, w_0, w_0w_1, …; t_0, t_1−t_0, …⟩`
/// with `t_k = 0`, in scaling normal form and modulo the logarithms `C(0, a)`.
///
/// In weight 1 the two sides are `C(1, w_1)` and `C(1, w_1⁻¹)`, which differ
/// by `C(0, w_1)`; that is the only discrepancy.
pub fn duality_residual(ws: &[GroupElement], ts: &[&str], max_degree: u32) -> Result<TruncatedGenFun> {
    let k = ws.len() - 1;
    let star = lambda_star(ws, &singleton_slots(ts), max_degree)?.set_zero(ts[k]);
    let mut xs = vec![ws[0].pow(0)?];
    for w in &ws[..k] {
        let last = xs.last().expect("nonempty").clone();
        xs.push(last.mul(w)?);
    }
    let dual_vars: Vec<String> = (0..=k).map(|i| format!("__s{i}")).collect();
    let dual_refs: Vec<&str> = dual_vars.iter().map(|s| s.as_str()).collect();
    let dual = lambda_dual(&xs, &dual_refs, max_degree)?;
    let new_vars: Vec<String> = ts[..k].iter().map(|t| t.to_string()).collect();
    let forms: Vec<Vec<(usize, Q)>> =
        (0..k).map(|i| if i == 0 { vec![(0, Q::one())] } else { vec![(i, Q::one()), (i - 1, q(-1))] }).collect();
    let dual = dual.substitute(&new_vars, &forms)?;
    Ok(star.with_variables(&new_vars).sub(&dual).scaling_normal_form().map_coeffs(drop_logs))
}

fn drop_logs(x: &LinComb) -> LinComb {
    let mut out = LinComb::new();
    for (w, c) in x.iter() {
        if !(w.weight() == 1 && w.letters().iter().any(|l| l.is_zero())) {
            out.add_term(w.clone(), c);
        }
    }
    out
}

/// `Λ*⟨w; t_0 + t, …, t_k + t⟩ − Λ*⟨w; t⟩`, raw coefficients.
pub fn shift_difference(ws: &[GroupElement], ts: &[&str], shift: &str, max_degree: u32) -> Result<TruncatedGenFun> {
    let f = lambda_star(ws, &singleton_slots(ts), max_degree)?;
    let mut new_vars: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    new_vars.push(shift.to_string());
    let s = ts.len();
    let forms: Vec<Vec<(usize, Q)>> = (0..s).map(|i| vec![(i, Q::one()), (s, Q::one())]).collect();
    Ok(f.substitute(&new_vars, &forms)?.sub(&f))
}

/// Memoized span membership per weight.
pub struct SpanCache<'a> {
    spec: &'a GroupSpec,
    kinds: Vec<RelationKind>,
    oracles: HashMap<usize, SpanOracle>,
}

impl<'a> SpanCache<'a> {
    pub fn new(spec: &'a GroupSpec, kinds: &[RelationKind]) -> Self {
        SpanCache { spec, kinds: kinds.to_vec(), oracles: HashMap::new() }
    }

    pub fn contains(&mut self, x: &LinComb) -> Result<bool> {
        let ws = x.weights();
        if ws.is_empty() {
            return Ok(true);
        }
        for w in &ws {
            if !self.oracles.contains_key(w) {
                let o = SpanOracle::new(self.spec, *w, &CoidealOptions::new(*w), &self.kinds)?;
                self.oracles.insert(*w, o);
            }
        }
        if ws.len() == 1 {
            return Ok(self.oracles[&ws[0]].contains(x));
        }
        for w in ws {
            let mut part = LinComb::new();
            for (word, c) in x.iter().filter(|(word, _)| word.weight() == w) {
                part.add_term(word.clone(), c);
            }
            if !self.oracles[&w].contains(&part) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every coefficient of `f` lies in the span.
    pub fn contains_all(&mut self, f: &TruncatedGenFun) -> Result<bool> {
        for x in f.coeffs.values() {
            if !self.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub const FIRST_SHUFFLE_AND_SCALING: [RelationKind; 3] =
    [RelationKind::FirstShuffle, RelationKind::ScalingW1, RelationKind::ScalingMultiplicative];
pub const SCALING_ONLY: [RelationKind; 2] = [RelationKind::ScalingW1, RelationKind::ScalingMultiplicative];

/// `Σ_{σ ∈ Σ_{r,s}} Λ⟨x_{σ⁻¹(1)}, …, x_{σ⁻¹(r+s)}, x_0; t_{σ⁻¹(1)}, …, t_0⟩`.
///
/// `xs[0]`, `ts[0]` are the fixed point and its variable; `xs[1..=r]` and
/// `xs[r+1..]` are the shuffled blocks.
pub fn dual_shuffle_sum(r: usize, s: usize, xs: &[GroupElement], ts: &[&str], max_degree: u32) -> Result<TruncatedGenFun> {
    if xs.len() != r + s + 1 || ts.len() != r + s + 1 || r == 0 || s == 0 {
        return Err(Error::Config(format!("expected r, s ≥ 1 and {} points", r + s + 1)));
    }
    let vars: Vec<String> = ts[1..].iter().map(|t| t.to_string()).collect();
    let mut total = TruncatedGenFun::zero(vars.clone(), max_degree);
    for sigma in enumerate_quasishuffles(r, s).into_iter().filter(|q| q.is_shuffle()) {
        let order: Vec<usize> = sigma.fibers().into_iter().map(|f| f[0] + 1).collect();
        let mut px: Vec<GroupElement> = order.iter().map(|&i| xs[i].clone()).collect();
        let mut pt: Vec<&str> = order.iter().map(|&i| ts[i]).collect();
        px.push(xs[0].clone());
        pt.push(ts[0]);
        total = total.add_scaled(&lambda_dual(&px, &pt, max_degree)?.with_variables(&vars), &Q::one());
    }
    Ok(total)
}

/// Outcome of the shuffle check for `Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstShuffleCheck {
    pub in_first_shuffle_span: bool,
    pub in_scaling_span: bool,
    pub nonzero_coefficients: usize,
}

pub fn genfun_first_shuffle_check(
    spec: &GroupSpec,
    r: usize,
    s: usize,
    xs: &[GroupElement],
    max_degree: u32,
) -> Result<FirstShuffleCheck> {
    let names: Vec<String> = (0..=r + s).map(|i| format!("t{i}")).collect();
    let ts: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let f = dual_shuffle_sum(r, s, xs, &ts, max_degree)?;
    let mut full = SpanCache::new(spec, &FIRST_SHUFFLE_AND_SCALING);
    let mut scaling = SpanCache::new(spec, &SCALING_ONLY);
    Ok(FirstShuffleCheck {
        in_first_shuffle_span: full.contains_all(&f)?,
        in_scaling_span: scaling.contains_all(&f)?,
        nonzero_coefficients: f.coeffs.len(),
    })
}

/// `\overline{QSh}^{r,s}(w_1|S_1, …, w_{r+s}|S_{r+s}, w_0|S_0)` as a series.
///
/// `ws[0]`, `slots[0]` belong to the fixed segment `w_0`.
pub fn olqsh_genfun(r: usize, s: usize, ws: &[GroupElement], slots: &[Vec<String>], max_degree: u32) -> Result<TruncatedGenFun> {
    if ws.len() != r + s + 1 || slots.len() != r + s + 1 || r == 0 || s == 0 {
        return Err(Error::Config(format!("expected r, s ≥ 1 and {} segments", r + s + 1)));
    }
    let mut vars: Vec<String> = vec![];
    for v in slots.iter().flatten() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    let merged = |idx: &[usize]| -> Result<(GroupElement, Vec<String>)> {
        let mut w = ws[0].pow(0)?;
        let mut slot = vec![];
        for &i in idx {
            w = w.mul(&ws[i])?;
            slot.extend(slots[i].iter().cloned());
        }
        Ok((w, slot))
    };
    let mut total = TruncatedGenFun::zero(vars.clone(), max_degree);
    let mut push = |segs: Vec<(GroupElement, Vec<String>)>, c: Q| -> Result<()> {
        let (w, sl): (Vec<_>, Vec<_>) = segs.into_iter().unzip();
        let f = lambda_star(&w, &sl, max_degree)?.with_variables(&vars);
        total = total.add_scaled(&f, &c);
        Ok(())
    };
    for sigma in enumerate_quasishuffles(r, s) {
        let mut segs = vec![];
        for fiber in sigma.fibers() {
            let idx: Vec<usize> = fiber.iter().map(|i| i + 1).collect();
            segs.push(merged(&idx)?);
        }
        segs.push((ws[0].clone(), slots[0].clone()));
        push(segs, q(sigma.sign()))?;
    }
    let a: Vec<usize> = (1..=r).collect();
    let b: Vec<usize> = (r + 1..=r + s).collect();
    for (keep, merge) in [(&a, &b), (&b, &a)] {
        let mut segs: Vec<(GroupElement, Vec<String>)> = keep.iter().map(|&i| (ws[i].clone(), slots[i].clone())).collect();
        let mut idx = merge.clone();
        idx.push(0);
        segs.push(merged(&idx)?);
        push(segs, q(-1))?;
    }
    Ok(total)
}

/// `δ` applied to every coefficient.
pub fn coproduct_coeffwise(f: &TruncatedGenFun) -> TruncatedWedge {
    let parts: Vec<(Exponent, WedgeComb)> = f.coeffs.par_iter().map(|(e, x)| (e.clone(), coproduct(x))).collect();
    let mut out = TruncatedWedge::zero(f.variables.clone(), f.max_total_degree);
    for (e, x) in parts {
        out.add_at(e, &x, &Q::one());
    }
    out
}

fn prod(ws: &[GroupElement]) -> Result<GroupElement> {
    let mut p = ws[0].pow(0)?;
    for w in ws {
        p = p.mul(w)?;
    }
    Ok(p)
}

/// The generating-function form of `δ Λ*⟨w_0, …, w_k; t_0, …, t_k⟩`.
///
/// `f` must come from [`lambda_star`] with singleton slots. The three groups
/// of terms are: cuts from a point to a segment, cuts from a zero on one
/// segment to another segment (both summed over cyclic relabelings), and
/// `Σ_{i=0}^{k} L_i ∧ C(0, w_i)`.
pub fn genfun_coproduct(f: &TruncatedGenFun) -> Result<TruncatedWedge> {
    coproduct_formula(f, 0)
}

/// The formula with the logarithmic terms summed over `i ≥ first_log`.
fn coproduct_formula(f: &TruncatedGenFun, first_log: usize) -> Result<TruncatedWedge> {
    if f.letters.is_empty() || f.slot_assignment.iter().any(|s| s.len() != 1) {
        return Err(Error::Unsupported("genfun_coproduct needs a Λ* with singleton slots".into()));
    }
    let k = f.letters.len() - 1;
    let max = f.max_total_degree;
    let vars = f.variables.clone();
    let ws0 = &f.letters;
    let ts0: Vec<String> = f.slot_assignment.iter().map(|s| s[0].clone()).collect();
    let ls = |w: Vec<GroupElement>, s: Vec<Vec<String>>| -> Result<TruncatedGenFun> {
        Ok(lambda_star(&w, &s, max)?.with_variables(&vars))
    };
    let one = |t: &String| vec![t.clone()];
    let mut out = TruncatedWedge::zero(vars.clone(), max);
    for c in 0..=k {
        let w: Vec<GroupElement> = (0..=k).map(|j| ws0[(j + c) % (k + 1)].clone()).collect();
        let t: Vec<String> = (0..=k).map(|j| ts0[(j + c) % (k + 1)].clone()).collect();
        for i in 0..=k {
            // (w_i⋯w_k | t_i, w_0 | t_0, …, w_{i-1} | t_{i-1})
            let mut aw = vec![prod(&w[i..])?];
            let mut at = vec![one(&t[i])];
            aw.extend(w[..i].iter().cloned());
            at.extend(t[..i].iter().map(one));
            // (w_{i+1} | t_{i+1}, …, w_k | t_k, w_0⋯w_i | t_i)
            let mut bw: Vec<GroupElement> = w[i + 1..].to_vec();
            let mut bt: Vec<Vec<String>> = t[i + 1..].iter().map(one).collect();
            bw.push(prod(&w[..=i])?);
            bt.push(one(&t[i]));
            out.add_wedge(&ls(aw, at)?, &ls(bw, bt)?, &Q::one());
        }
        for i in 1..=k {
            let pair = vec![t[i].clone(), t[0].clone()];
            let mut aw: Vec<GroupElement> = w[1..i].to_vec();
            let mut at: Vec<Vec<String>> = t[1..i].iter().map(one).collect();
            let mut tail = prod(&w[i..])?;
            tail = tail.mul(&w[0])?;
            aw.push(tail);
            at.push(pair.clone());
            let mut bw = vec![prod(&w[..=i])?];
            let mut bt = vec![pair];
            bw.extend(w[i + 1..].iter().cloned());
            bt.extend(t[i + 1..].iter().map(one));
            let a = ls(aw, at)?.mul_linear(&[(t[0].as_str(), Q::one())]);
            out.add_wedge(&a, &ls(bw, bt)?, &Q::one());
        }
    }
    for i in first_log..=k {
        let li = log_coefficient(ws0, &ts0, i, max)?.with_variables(&vars);
        let log = LinComb::from_word(make_word(&[GroupElement::Zero, ws0[i].clone()])?);
        out.add_wedge(&li, &TruncatedGenFun::constant(log, vars.clone(), max), &Q::one());
    }
    Ok(out)
}

/// `L_i = t_i Λ*⟨w; t⟩ + Λ*⟨…, w_{i-1}w_i, …⟩ + Λ*⟨…, w_iw_{i+1}, …⟩`, indices mod `k+1`.
fn log_coefficient(ws: &[GroupElement], ts: &[String], i: usize, max: u32) -> Result<TruncatedGenFun> {
    let k = ws.len() - 1;
    let slots: Vec<Vec<String>> = ts.iter().map(|t| vec![t.clone()]).collect();
    let mut li = lambda_star(ws, &slots, max)?.mul_linear(&[(ts[i].as_str(), Q::one())]);
    if k == 0 {
        return Ok(li);
    }
    for other in [(i + k) % (k + 1), (i + 1) % (k + 1)] {
        // merge segment i into `other`, keeping other's variable
        let mut w = vec![];
        let mut s = vec![];
        for j in 0..=k {
            if j == i {
                continue;
            }
            if j == other {
                w.push(if other == (i + k) % (k + 1) { ws[other].mul(&ws[i])? } else { ws[i].mul(&ws[other])? });
            } else {
                w.push(ws[j].clone());
            }
            s.push(slots[j].clone());
        }
        li = li.add_scaled(&lambda_star(&w, &s, max)?, &Q::one());
    }
    Ok(li)
}

/// `genfun_coproduct(f)` minus the coefficientwise coproduct, both in scaling
/// normal form; for `k = 2` (weight-1)∧(weight-1) pairs are discarded.
pub fn genfun_coproduct_residual(f: &TruncatedGenFun) -> Result<TruncatedWedge> {
    let k = f.letters.len().saturating_sub(1);
    let formula = genfun_coproduct(f)?.map_coeffs(wedge_normal_form);
    let direct = coproduct_coeffwise(f).map_coeffs(wedge_normal_form);
    let diff = formula.sub(&direct);
    Ok(if k <= 2 { diff.map_coeffs(|x| x.without_weight1_pairs()) } else { diff })
}
