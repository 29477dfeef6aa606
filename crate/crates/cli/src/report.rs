//! The report every command produces, in JSON and plain-text form.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Bumped on any incompatible change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema for [`RunReport`].
pub const SCHEMA: &str = include_str!("../schema/run-report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    /// `outcome` plus command-specific result fields.
    pub verdict: Value,
    pub certificates: Vec<Value>,
    pub witnesses: Vec<Value>,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, verdict: Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            verdict,
            certificates: Vec::new(),
            witnesses: Vec::new(),
            checks: Vec::new(),
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn outcome(&self) -> &str {
        self.verdict["outcome"].as_str().unwrap_or("")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.outcome());
        if let Value::Object(fields) = &self.verdict {
            for (key, value) in fields {
                match (key.as_str(), value) {
                    ("outcome", _) => {}
                    ("generators", Value::Array(gens)) => {
                        let _ = writeln!(out, "generators ({}):", gens.len());
                        for g in gens {
                            let _ = writeln!(out, "  {}", vector_text(g));
                        }
                    }
                    (_, v) => {
                        let _ = writeln!(out, "{key}: {}", compact(v));
                    }
                }
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness: {}", compact(w));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
        }
        out
    }
}

fn vector_text(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(compact).collect::<Vec<_>>().join(","),
        other => compact(other),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
