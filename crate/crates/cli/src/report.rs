//! The report every command produces, printed as text or JSON.

use std::fmt::Write;

use gwenum_core::gw::{format_gw, gw_invariants, FormatOptions, GwInvariants};
use gwenum_core::GwElement;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A named pass/fail check with the smallest failing input, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// A labeled GW element with its printed form and complete invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueEntry {
    pub label: String,
    pub text: String,
    pub value: GwElement,
    pub invariants: GwInvariants,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub values: Vec<ValueEntry>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            status: Status::Pass,
            checks: vec![],
            values: vec![],
            notes: vec![],
            warnings: vec![],
            elapsed_ms: 0,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, counterexample: Option<String>) {
        if !passed {
            self.status = Status::Fail;
        }
        self.checks.push(Check {
            name: name.into(),
            passed,
            counterexample: if passed { None } else { counterexample },
        });
    }

    pub fn value(&mut self, label: impl Into<String>, x: &GwElement, opts: FormatOptions) {
        self.values.push(ValueEntry {
            label: label.into(),
            text: format_gw(x, opts),
            value: x.clone(),
            invariants: gw_invariants(x),
        });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn warn(&mut self, line: impl Into<String>) {
        self.warnings.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.values {
            let _ = writeln!(out, "{}: {}", v.label, v.text);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        for c in &self.checks {
            match (&c.passed, &c.counterexample) {
                (true, _) => {
                    let _ = writeln!(out, "PASS {}", c.name);
                }
                (false, Some(x)) => {
                    let _ = writeln!(out, "FAIL {}: {x}", c.name);
                }
                (false, None) => {
                    let _ = writeln!(out, "FAIL {}", c.name);
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if !self.checks.is_empty() {
            let ok = self.checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(out, "{ok}/{} checks passed", self.checks.len());
        }
        out
    }
}
