//! Batch front end: enumeration, exact coideal verification, numerical
//! relation checks and the acceptance suite, all reporting JSON.

pub mod args;
pub mod commands;
pub mod report;
pub mod suite;

use std::time::Instant;

use serde_json::{json, Value};

use args::{Cli, Command};
use report::{envelope, Failure, Outcome, RunManifest};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate(_) => "enumerate",
        Command::VerifyCoideal(_) => "verify-coideal",
        Command::Eval(_) => "eval",
        Command::CheckRelation(_) => "check-relation",
        Command::ExpandGenfun(_) => "expand-genfun",
        Command::Suite(_) => "suite",
    }
}

fn seed_and_out(c: &Command) -> (Option<u64>, Option<&str>) {
    match c {
        Command::Enumerate(a) => (None, a.out.as_deref()),
        Command::VerifyCoideal(a) => (None, a.out.as_deref()),
        Command::Eval(a) => (Some(a.integration.seed), a.out.as_deref()),
        Command::CheckRelation(a) => (Some(a.integration.seed), a.out.as_deref()),
        Command::ExpandGenfun(a) => (None, a.out.as_deref()),
        Command::Suite(a) => (Some(a.seed), a.out.as_deref()),
    }
}

fn suite(a: &args::SuiteArgs) -> Result<Outcome, Failure> {
    if let Some(bad) = a.only.iter().find(|&&i| !(1..=13).contains(&i)) {
        return Err(Failure::usage(format!("no criterion {bad}; choose from 1-13")));
    }
    let cfg = suite::SuiteConfig { seed: a.seed, samples: a.samples };
    let results = suite::run_suite(&cfg, &a.only);
    for c in &results {
        eprintln!("{}", c.line());
    }
    let pass = results.iter().all(|c| c.pass);
    let timing: Value = results.iter().map(|c| (c.id.to_string(), c.timing.clone())).collect::<serde_json::Map<_, _>>().into();
    let mut outcome = Outcome::new(pass, json!({"criteria": results}));
    outcome.timing = json!({"criteria": timing});
    Ok(outcome)
}

/// Runs a parsed command line and returns the report together with the exit code.
pub fn run(cli: &Cli) -> Result<(Value, i32), Failure> {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a),
        Command::VerifyCoideal(a) => commands::verify(a),
        Command::Eval(a) => commands::eval(a),
        Command::CheckRelation(a) => commands::check(a),
        Command::ExpandGenfun(a) => commands::expand_genfun(a),
        Command::Suite(a) => suite(a),
    }?;
    let (seed, out) = seed_and_out(&cli.command);
    let manifest = RunManifest::new(command_name(&cli.command), &cli.command, seed, out);
    let report = envelope(&manifest, &outcome, start.elapsed().as_millis() as u64);
    Ok((report, if outcome.pass { report::EXIT_PASS } else { report::EXIT_FAIL }))
}

/// Where the report goes, if anywhere besides stdout.
pub fn output_path(cli: &Cli) -> Option<&str> {
    seed_and_out(&cli.command).1
}
