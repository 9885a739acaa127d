use std::fmt::Write as _;

use modcat::linalg::{Matrix, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub check: String,
    pub location: String,
    pub verdict: String,
    pub witness: Option<String>,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub findings: Vec<Finding>,
    pub artifacts: serde_json::Map<String, Value>,
}

/// Variant name of a core error, e.g. `NonAssociative`.
pub fn error_kind(e: &modcat::Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), findings: Vec::new(), artifacts: serde_json::Map::new() }
    }

    pub fn pass(&mut self, check: &str, location: &str) {
        self.findings.push(Finding {
            check: check.into(),
            location: location.into(),
            verdict: "pass".into(),
            witness: None,
        });
    }

    pub fn fail(&mut self, check: &str, location: &str, verdict: &str, witness: impl Into<String>) {
        self.findings.push(Finding {
            check: check.into(),
            location: location.into(),
            verdict: verdict.into(),
            witness: Some(witness.into()),
        });
    }

    pub fn error(&mut self, check: &str, location: &str, e: &modcat::Error) {
        self.fail(check, location, &error_kind(e), e.to_string());
    }

    /// A pass when `ok`, otherwise a failure carrying `witness`.
    pub fn expect(&mut self, check: &str, location: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(check, location);
        } else {
            self.fail(check, location, "mismatch", witness());
        }
    }

    pub fn artifact(&mut self, key: &str, value: Value) {
        self.artifacts.insert(key.into(), value);
    }

    pub fn status(&self) -> Status {
        if self.findings.iter().all(|f| f.verdict == "pass") {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status(),
            "findings": self.findings,
            "artifacts": self.artifacts,
        })
    }

    pub fn to_json(&self) -> String {
        // Maps are BTreeMap-backed, so keys come out sorted.
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(s, "{} {}", self.command, status);
        for f in &self.findings {
            let _ = write!(s, "  [{}] {} @ {}", f.verdict, f.check, f.location);
            if let Some(w) = &f.witness {
                let _ = write!(s, ": {w}");
            }
            s.push('\n');
        }
        for (k, v) in &self.artifacts {
            let _ = writeln!(s, "  {k}: {v}");
        }
        s
    }
}

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}
