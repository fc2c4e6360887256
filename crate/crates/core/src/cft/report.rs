use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A computed value with the operation that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub name: String,
    pub value: String,
    pub provenance: String,
}

/// A value the theory predicts but the artifact cannot compute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub name: String,
    pub value: String,
    pub provenance: String,
    pub verified: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub provenance: String,
}

/// Common report document: computed values, predictions, checks and the
/// external inputs they rest on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub kind: String,
    pub field: Option<String>,
    pub verified: Vec<Value>,
    pub predicted: Vec<Prediction>,
    pub checks: Vec<Check>,
    pub provenance: Vec<String>,
}

impl Report {
    pub fn new(kind: impl Into<String>, field: Option<i64>) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            kind: kind.into(),
            field: field.map(|d| format!("Q(sqrt {d})")),
            verified: Vec::new(),
            predicted: Vec::new(),
            checks: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl Display, provenance: impl Into<String>) {
        self.verified.push(Value {
            name: name.into(),
            value: value.to_string(),
            provenance: provenance.into(),
        });
    }

    pub fn check_eq<T: PartialEq + Display>(&mut self, name: impl Into<String>, lhs: &T, rhs: &T, provenance: impl Into<String>) -> bool {
        let pass = lhs == rhs;
        self.checks.push(Check {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            provenance: provenance.into(),
        });
        pass
    }

    pub fn check(&mut self, name: impl Into<String>, lhs: impl Display, rhs: impl Display, pass: bool, provenance: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            provenance: provenance.into(),
        });
        pass
    }

    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.provenance.contains(&s) {
            self.provenance.push(s);
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.verified.extend(other.verified);
        self.predicted.extend(other.predicted);
        self.checks.extend(other.checks);
        for p in other.provenance {
            self.note(p);
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text table for people.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let title = match &self.field {
            Some(f) => format!("{} for {}", self.kind, f),
            None => self.kind.clone(),
        };
        let _ = writeln!(out, "{title}");
        if !self.verified.is_empty() {
            let w = self.verified.iter().map(|v| v.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "computed:");
            for v in &self.verified {
                let _ = writeln!(out, "  {:w$}  {}  [{}]", v.name, v.value, v.provenance);
            }
        }
        if !self.predicted.is_empty() {
            let _ = writeln!(out, "predicted (not verified):");
            for p in &self.predicted {
                let _ = writeln!(out, "  {}  {}  [{}]", p.name, p.value, p.note);
            }
        }
        if !self.checks.is_empty() {
            let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  {mark}  {:w$}  {} = {}", c.name, c.lhs, c.rhs);
            }
        }
        for p in &self.provenance {
            let _ = writeln!(out, "note: {p}");
        }
        out
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table())
    }
}
