//! Report envelope, exit codes and error mapping.

use std::fmt;

use hodgecor_numeric::NumError;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// An error carrying the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        Failure { code: EXIT_RESOURCE, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl From<hodgecor_core::Error> for Failure {
    fn from(e: hodgecor_core::Error) -> Self {
        let code = match e {
            hodgecor_core::Error::Unsupported(_) => EXIT_UNSUPPORTED,
            hodgecor_core::Error::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<NumError> for Failure {
    fn from(e: NumError) -> Self {
        let code = match e {
            NumError::Unsupported(_) | NumError::NotRepresentable(_) => EXIT_UNSUPPORTED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// The reproducibility header embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub output_paths: Vec<String>,
}

impl RunManifest {
    pub fn new<F: Serialize>(command: &str, flags: &F, seed: Option<u64>, out: Option<&str>) -> Self {
        RunManifest {
            command: command.to_string(),
            flags: serde_json::to_value(flags).unwrap_or(Value::Null),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            output_paths: out.map(|s| vec![s.to_string()]).unwrap_or_default(),
        }
    }
}

/// A command's result: its JSON payload and whether everything it checked passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub pass: bool,
    pub result: Value,
    /// Wall-clock measurements, kept apart so the rest is reproducible.
    pub timing: Value,
}

impl Outcome {
    pub fn new(pass: bool, result: Value) -> Self {
        Outcome { pass, result, timing: json!({}) }
    }
}

/// `{"manifest": …, "pass": …, "result": …, "timing": …}`.
///
/// Everything outside `timing` depends only on the flags and the seed.
pub fn envelope(manifest: &RunManifest, outcome: &Outcome, wall_clock_ms: u64) -> Value {
    let mut timing = outcome.timing.clone();
    if let Value::Object(m) = &mut timing {
        m.insert("wall_clock_ms".into(), json!(wall_clock_ms));
    }
    json!({
        "manifest": manifest,
        "pass": outcome.pass,
        "result": outcome.result,
        "timing": timing,
    })
}

/// Removes the `timing` object, leaving the reproducible part of a report.
pub fn strip_timing(mut report: Value) -> Value {
    if let Value::Object(m) = &mut report {
        m.remove("timing");
    }
    report
}
