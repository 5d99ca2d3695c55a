//! The subcommands, each producing an [`Outcome`] or a [`Failure`].

use std::collections::BTreeMap;

use hodgecor_core::coideal::{verify_coideal, CoidealOptions, Family, Mutation, WeightReport};
use hodgecor_core::genfun::{lambda_dual, lambda_star, singleton_slots};
use hodgecor_core::relations::{dilog_base_case, second_shuffle};
use hodgecor_core::{enumerate_quasishuffles, quasishuffle_count, GroupElement, GroupSpec};
use hodgecor_numeric::check::evaluate;
use hodgecor_numeric::{
    check_named, check_relation_element, enumerate_plane_trees, parse_complex, Complex64, ComplexVal, Estimator,
    IntegrationConfig, Method, NamedRelation, RelationReport,
};
use serde_json::{json, Value};

use crate::args::*;
use crate::report::{Failure, Outcome};

/// Environment variable capping linear-algebra dimensions.
pub const MAX_DIM_ENV: &str = "CORRELATOR_MAX_DIM";

pub fn group_spec(g: &GroupArgs) -> Result<GroupSpec, Failure> {
    Ok(match g.group {
        GroupKind::Mu => GroupSpec::mu(g.n)?,
        GroupKind::Free => {
            if g.symbols.is_empty() {
                return Err(Failure::usage("--group free needs --symbols"));
            }
            GroupSpec::free(&g.symbols)?
        }
    })
}

fn catalan(k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (2 * (2 * i + 1)) / (i + 2))
}

pub fn enumerate(a: &EnumerateArgs) -> Result<Outcome, Failure> {
    match a.kind {
        EnumerateKind::Quasishuffles => {
            let [r, s] = a.sizes[..] else {
                return Err(Failure::usage("quasishuffles need two block sizes: r s"));
            };
            let count = quasishuffle_count(r, s);
            let mut result = json!({"kind": "quasishuffles", "r": r, "s": s, "count": count.to_string()});
            if a.list {
                if count > a.limit.into() {
                    return Err(Failure::resource(format!(
                        "{count} quasishuffles exceed the listing limit {} (raise --limit)",
                        a.limit
                    )));
                }
                let items: Vec<Value> = enumerate_quasishuffles(r, s)
                    .iter()
                    .map(|q| json!({"slots": q.m, "assignment": q.assignment, "sign": q.sign()}))
                    .collect();
                result["items"] = Value::Array(items);
            }
            Ok(Outcome::new(true, result))
        }
        EnumerateKind::Trees => {
            let leaves = a.leaves.or(a.sizes.first().copied()).ok_or_else(|| Failure::usage("trees need --leaves"))?;
            if leaves < 2 {
                return Err(Failure::usage("a plane tree needs at least two leaves"));
            }
            if leaves > 40 {
                return Err(Failure::resource("more than 40 leaves overflows the tree count"));
            }
            let count = if leaves == 2 { 1 } else { catalan(leaves - 2) };
            let mut result = json!({"kind": "trees", "leaves": leaves, "count": count.to_string()});
            if a.list {
                if count > a.limit as u128 {
                    return Err(Failure::resource(format!(
                        "{count} trees exceed the listing limit {} (raise --limit)",
                        a.limit
                    )));
                }
                let trees = enumerate_plane_trees(leaves);
                result["items"] = serde_json::to_value(&trees).map_err(|e| Failure::usage(e.to_string()))?;
            }
            Ok(Outcome::new(true, result))
        }
    }
}

fn max_dim_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(MAX_DIM_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::usage(format!("{MAX_DIM_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// The single-sign mutation used as a negative control.
pub fn control_mutation() -> Mutation {
    Mutation { weight: 4, r: 2, s: 2, ns: vec![0; 5], flip_index: 3, occurrence: 0 }
}

/// Splits coideal weight reports into reproducible results and timings.
pub fn weight_reports_json(reports: &[WeightReport]) -> (Value, Value) {
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("serializable");
            if let Value::Object(m) = &mut v {
                m.remove("elapsed_ms");
                m.insert("quotient_dim".into(), json!(r.dim_space - r.dim_relations));
            }
            v
        })
        .collect();
    let times: Vec<Value> = reports.iter().map(|r| json!({"weight": r.weight, "elapsed_ms": r.elapsed_ms})).collect();
    (Value::Array(rows), Value::Array(times))
}

pub fn verify(a: &CoidealArgs) -> Result<Outcome, Failure> {
    if a.group.group == GroupKind::Free {
        return Err(Failure::usage(
            "coideal verification needs a finite group: use --group mu --N <order>; free groups have infinitely many words per weight",
        ));
    }
    let spec = group_spec(&a.group)?;
    let mut opts = CoidealOptions::new(a.max_weight);
    opts.restricted = a.restricted;
    opts.family = match a.family {
        FamilyArg::Full => Family::Full,
        FamilyArg::FirstShuffle => Family::FirstShuffle,
    };
    opts.max_dim = max_dim_from_env()?;
    if a.mutation_control {
        opts.mutation = Some(control_mutation());
    }
    let reports = verify_coideal(&spec, &opts)?;
    let pass = reports.iter().all(|r| r.contained);
    let (rows, times) = weight_reports_json(&reports);
    let mut outcome = Outcome::new(pass, json!({"group": format!("mu_{}", a.group.n), "weights": rows}));
    outcome.timing = json!({"weights": times});
    Ok(outcome)
}

pub fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, Complex64>, Failure> {
    let mut out = BTreeMap::new();
    for item in items.iter().filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("assignment {item:?} is not name=value")))?;
        let z = parse_complex(v).ok_or_else(|| Failure::usage(format!("cannot parse complex value {v:?}")))?;
        if out.insert(k.trim().to_string(), z).is_some() {
            return Err(Failure::usage(format!("{k} assigned twice")));
        }
    }
    Ok(out)
}

pub fn parse_points(word: &str, assign: &BTreeMap<String, Complex64>) -> Result<Vec<Complex64>, Failure> {
    let inner = word.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            assign
                .get(tok)
                .copied()
                .or_else(|| parse_complex(tok))
                .ok_or_else(|| Failure::usage(format!("letter {tok:?} is neither a number nor an assigned name")))
        })
        .collect()
}

pub fn integration_config(a: &IntegrationArgs) -> Result<IntegrationConfig, Failure> {
    let cfg = IntegrationConfig {
        samples: a.samples,
        seed: a.seed,
        domain_radius: a.domain_radius,
        estimator: match a.estimator {
            EstimatorArg::MeanOfMeans => Estimator::MeanOfMeans,
            EstimatorArg::MedianOfMeans => Estimator::MedianOfMeans,
        },
        batches: a.batches,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Closed => Method::Closed,
        MethodArg::Feynman => Method::Feynman,
        MethodArg::Auto => Method::Auto,
    }
}

pub fn eval(a: &EvalArgs) -> Result<Outcome, Failure> {
    let assign = parse_assignments(&a.assign)?;
    let zs = parse_points(&a.word, &assign)?;
    let cfg = integration_config(&a.integration)?;
    let (value, sigma, used) = evaluate(&zs, method(a.method), &cfg)?;
    let points: Vec<ComplexVal> = zs.iter().map(|&z| z.into()).collect();
    Ok(Outcome::new(
        true,
        json!({
            "points": points,
            "weight": zs.len() - 1,
            "value": value,
            "sigma": sigma,
            "method": used,
            "normalization": format!("Cor = value * (2*pi*i)^-{}", zs.len() - 1),
        }),
    ))
}

fn get(assign: &BTreeMap<String, Complex64>, name: &str) -> Result<ComplexVal, Failure> {
    assign
        .get(name)
        .map(|&z| z.into())
        .ok_or_else(|| Failure::usage(format!("missing --assign {name}=<complex>")))
}

/// `prefix{start}, prefix{start+1}, …` as long as they are assigned.
fn sequence(assign: &BTreeMap<String, Complex64>, prefix: &str, start: usize) -> Vec<ComplexVal> {
    (start..).map_while(|i| assign.get(&format!("{prefix}{i}")).map(|&z| z.into())).collect()
}

fn need(x: Option<usize>, flag: &str) -> Result<usize, Failure> {
    x.ok_or_else(|| Failure::usage(format!("this relation needs --{flag}")))
}

pub fn check(a: &CheckArgs) -> Result<Outcome, Failure> {
    let assign = parse_assignments(&a.assign)?;
    let cfg = integration_config(&a.integration)?;
    let m = method(a.method);
    let report: RelationReport = match a.relation {
        RelationArg::SecondShuffle => {
            let (r, s) = (need(a.r, "r")?, need(a.s, "s")?);
            let ns = if a.n.is_empty() { vec![0; r + s + 1] } else { a.n.clone() };
            let (spec, letters) = if a.roots.is_empty() {
                let names: Vec<String> = (1..=r + s).map(|i| format!("w{i}")).collect();
                let spec = GroupSpec::free(&names)?;
                for n in &names {
                    get(&assign, n)?;
                }
                let letters: Vec<GroupElement> =
                    names.iter().map(|n| spec.symbol(n, 1)).collect::<Result<_, _>>()?;
                (spec, letters)
            } else {
                let order = a.order.ok_or_else(|| Failure::usage("--roots needs --N"))?;
                if a.roots.len() != r + s {
                    return Err(Failure::usage(format!("--roots needs {} exponents", r + s)));
                }
                let spec = GroupSpec::mu(order)?;
                let letters: Vec<GroupElement> = a.roots.iter().map(|&k| spec.root(k)).collect::<Result<_, _>>()?;
                (spec, letters)
            };
            let mut prod = spec.identity();
            for w in &letters {
                prod = prod.mul(w)?;
            }
            let mut ws = vec![prod.inverse()?];
            ws.extend(letters);
            let rel = second_shuffle(r, s, &ws, &ns)?;
            check_relation_element(&spec, &rel, &assign, m, &cfg)?
        }
        RelationArg::DilogBaseCase => {
            let spec = GroupSpec::free(&["a", "b"])?;
            get(&assign, "a")?;
            get(&assign, "b")?;
            let rel = dilog_base_case(&spec.symbol("a", 1)?, &spec.symbol("b", 1)?)?;
            check_relation_element(&spec, &rel, &assign, m, &cfg)?
        }
        other => {
            let named = named_relation(other, a, &assign)?;
            check_named(&named, m, &cfg)?
        }
    };
    let pass = report.pass;
    Ok(Outcome::new(pass, serde_json::to_value(&report).expect("serializable")))
}

fn named_relation(
    rel: RelationArg,
    a: &CheckArgs,
    assign: &BTreeMap<String, Complex64>,
) -> Result<NamedRelation, Failure> {
    let points = |prefix: &str, start: usize, min: usize| -> Result<Vec<ComplexVal>, Failure> {
        let v = sequence(assign, prefix, start);
        if v.len() < min {
            return Err(Failure::usage(format!("need --assign {prefix}{start}=…, … ({min} or more values)")));
        }
        Ok(v)
    };
    Ok(match rel {
        RelationArg::FiveTerm => NamedRelation::FiveTerm { w1: get(assign, "w1")?, w2: get(assign, "w2")? },
        RelationArg::Gr27 => NamedRelation::Gr27 { x: get(assign, "x")? },
        RelationArg::Gr29 => NamedRelation::Gr29 { x: get(assign, "x")?, y: get(assign, "y")? },
        RelationArg::Gr29Reduced => NamedRelation::Gr29Reduced { x: get(assign, "x")?, y: get(assign, "y")? },
        RelationArg::Gr28 => NamedRelation::Gr28 { zs: points("z", 1, 2)? },
        RelationArg::AdditiveShuffle => {
            let (m, n) = (need(a.r, "r")?, need(a.s, "s")?);
            let eps = points("eps", 1, m + n)?;
            let reference = sequence(assign, "ref", 1);
            NamedRelation::AdditiveShuffle { m, n, eps, reference: (!reference.is_empty()).then_some(reference) }
        }
        RelationArg::DistributionW1 => NamedRelation::DistributionW1 { x: get(assign, "x")?, y: get(assign, "y")? },
        RelationArg::FirstShuffle => {
            NamedRelation::FirstShuffle { x0: get(assign, "x0")?, xs: points("x", 1, 2)?, r: need(a.r, "r")? }
        }
        RelationArg::Rotation => NamedRelation::Rotation { zs: points("z", 0, 2)? },
        RelationArg::Reversal => NamedRelation::Reversal { zs: points("z", 0, 2)? },
        RelationArg::AdditiveShift => NamedRelation::AdditiveShift { zs: points("z", 0, 2)?, a: get(assign, "a")? },
        RelationArg::MultiplicativeShift => {
            NamedRelation::MultiplicativeShift { zs: points("z", 0, 3)?, a: get(assign, "a")? }
        }
        RelationArg::Continuity => NamedRelation::Continuity { t: get(assign, "t")? },
        RelationArg::SecondShuffle | RelationArg::DilogBaseCase => unreachable!("handled symbolically"),
    })
}

pub fn expand_genfun(a: &GenfunArgs) -> Result<Outcome, Failure> {
    let spec = group_spec(&a.group)?;
    if a.letters.is_empty() {
        return Err(Failure::usage("--letters needs at least one element"));
    }
    let letters: Vec<GroupElement> = a.letters.iter().map(|t| spec.parse_element(t)).collect::<Result<_, _>>()?;
    let ts: Vec<String> = (0..letters.len()).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = ts.iter().map(|s| s.as_str()).collect();
    let f = if a.dual {
        lambda_dual(&letters, &refs, a.max_degree)?
    } else {
        lambda_star(&letters, &singleton_slots(&refs), a.max_degree)?
    };
    Ok(Outcome::new(
        true,
        json!({
            "series": if a.dual { "dual" } else { "star" },
            "variables": f.variables,
            "max_total_degree": f.max_total_degree,
            "coefficients": f.to_entries(),
        }),
    ))
}

