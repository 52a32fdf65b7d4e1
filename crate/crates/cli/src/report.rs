//! Serialized reports. Key order is fixed by the struct and by `BTreeMap`, so
//! identical invocations print identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a key is renamed or its meaning changes.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    /// Inputs echoed in canonical printed form.
    pub input: BTreeMap<String, Value>,
    /// The statement the verdict instantiates.
    pub anchor: String,
    /// One-sentence reading of the verdict.
    pub statement: String,
    pub result: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, anchor: &str) -> Self {
        Report {
            version: REPORT_VERSION,
            command: command.to_string(),
            input: BTreeMap::new(),
            anchor: anchor.to_string(),
            statement: String::new(),
            result: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.input.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.to_string(), v.into());
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (report v{})", self.command, self.version).unwrap();
        for (k, v) in &self.input {
            writeln!(out, "  input {k}: {}", plain(v)).unwrap();
        }
        writeln!(out, "  anchor: {}", self.anchor).unwrap();
        for (k, v) in &self.result {
            writeln!(out, "  {k}: {}", plain(v)).unwrap();
        }
        writeln!(out, "{}", self.statement).unwrap();
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}
