//! Deterministic reports, rendered as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed values with nothing asserted about them.
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub values: Map<String, Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            values: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }

    pub fn with_list<I, T>(self, key: &str, items: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let list: Vec<Value> = items.into_iter().map(|t| Value::String(t.to_string())).collect();
        self.with(key, list)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub source: Option<String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub verdict: Status,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: String, seed: u64) -> Self {
        Report {
            command,
            source: None,
            seed,
            checks: Vec::new(),
            verdict: Status::Pass,
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sets the verdict from the checks: fail if any check failed.
    pub fn finish(mut self) -> Self {
        self.verdict = Status::from_bool(self.checks.iter().all(|c| c.status != Status::Fail));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Status::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(src) = &self.source {
            writeln!(out, "source: {src}").unwrap();
        }
        writeln!(out, "seed: {}", self.seed).unwrap();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            writeln!(out, "[{tag}] {}", c.name).unwrap();
            for (k, v) in &c.values {
                write_value(&mut out, k, v, 1);
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        writeln!(out, "verdict: {}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = a.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "    ".repeat(depth);
    if let Some(s) = scalar(v) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    writeln!(out, "{pad}{key}:").unwrap();
    match v {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                write_value(out, &i.to_string(), item, depth + 1);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                write_value(out, k, item, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
