//! Structured verification reports: a suite is a deterministic list of named
//! checks, each pass/fail/reported, with residual summaries for failures.
//! Serialized as JSON with stable field names (`suite`, `checks`, `status`,
//! `residuals`, `config`, `version`).

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::prefactor::Coeff;
use crate::tensor::Mat;

/// Outcome of a single check. `Reported` marks informational checks that are
/// recorded but never asserted (they don't affect the suite status).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

/// Residual summary for a failed (or informational) check: how many
/// coefficients failed to cancel and how many of those sit in nontrivial
/// prefactor classes, plus one rendered offender for diagnosis.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub nonzero_coefficients: usize,
    pub irreducible_prefactor_classes: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sample: Option<String>,
}

impl Residuals {
    pub fn is_zero(&self) -> bool {
        self.nonzero_coefficients == 0
    }

    /// Summarize a matrix residual: count nonzero (entry, prefactor-class)
    /// pairs and render the first offending entry.
    pub fn of_mat(m: &Mat) -> Residuals {
        let mut res = Residuals::default();
        for (idx, coeff) in m.nonzero_entries() {
            for (symbols, scalar) in coeff.classes() {
                if !scalar.is_zero() {
                    res.nonzero_coefficients += 1;
                    if !symbols.is_empty() {
                        res.irreducible_prefactor_classes += 1;
                    }
                    if res.sample.is_none() {
                        res.sample = Some(format!("entry {idx:?}: {coeff}"));
                    }
                }
            }
        }
        res
    }

    /// Summarize a single-coefficient residual.
    pub fn of_coeff(c: &Coeff) -> Residuals {
        let mut res = Residuals::default();
        for (symbols, scalar) in c.classes() {
            if !scalar.is_zero() {
                res.nonzero_coefficients += 1;
                if !symbols.is_empty() {
                    res.irreducible_prefactor_classes += 1;
                }
                if res.sample.is_none() {
                    res.sample = Some(format!("{c}"));
                }
            }
        }
        res
    }
}

/// One named check inside a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residuals: Option<Residuals>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

/// A full suite report; `status` is the conjunction of all asserted checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub config: BTreeMap<String, String>,
    pub version: String,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            status: Status::Pass,
            checks: Vec::new(),
            config: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Record a check and fold its status into the suite status
    /// (`Reported` checks never fail a suite).
    pub fn push(&mut self, check: Check) -> &mut Report {
        if check.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.checks.push(check);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn set_config(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    /// Merge another suite's checks (prefixing their names), used by run-all.
    pub fn absorb(&mut self, other: Report) {
        for mut check in other.checks {
            check.name = format!("{}/{}", other.suite, check.name);
            self.push(check);
        }
    }

    /// Drop all timing fields (golden tests compare byte-identical JSON).
    pub fn strip_timings(&mut self) {
        for check in &mut self.checks {
            check.elapsed_ms = None;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Render a human-readable text form: one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Reported => "INFO",
            };
            out.push_str(&format!("  [{status}] {}", c.name));
            if let Some(ms) = c.elapsed_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
            for note in &c.notes {
                out.push_str(&format!("         note: {note}\n"));
            }
            if let Some(res) = &c.residuals {
                if !res.is_zero() {
                    out.push_str(&format!(
                        "         residual: {} nonzero coefficient(s), {} in irreducible prefactor class(es)\n",
                        res.nonzero_coefficients, res.irreducible_prefactor_classes
                    ));
                    if let Some(sample) = &res.sample {
                        out.push_str(&format!("         offender: {sample}\n"));
                    }
                }
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Build a check by timing a closure that yields (status, residuals, notes).
pub fn run_check(
    name: &str,
    body: impl FnOnce() -> (Status, Option<Residuals>, Vec<String>),
) -> Check {
    let start = Instant::now();
    let (status, residuals, notes) = body();
    Check {
        name: name.to_string(),
        status,
        residuals,
        notes,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    }
}

/// A check asserting a matrix residual is exactly zero.
pub fn mat_zero_check(name: &str, notes: Vec<String>, residual: &Mat) -> Check {
    let res = Residuals::of_mat(residual);
    Check {
        name: name.to_string(),
        status: if res.is_zero() { Status::Pass } else { Status::Fail },
        residuals: if res.is_zero() { None } else { Some(res) },
        notes,
        elapsed_ms: None,
    }
}

/// A check asserting a boolean outcome.
pub fn bool_check(name: &str, ok: bool, notes: Vec<String>) -> Check {
    Check {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        residuals: None,
        notes,
        elapsed_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("demo");
        r.set_config("strategy", "symbolic");
        r.push(bool_check("first", true, vec!["a note".into()]));
        r.push(Check {
            name: "second".into(),
            status: Status::Fail,
            residuals: Some(Residuals {
                nonzero_coefficients: 2,
                irreducible_prefactor_classes: 1,
                sample: Some("entry [0, 1]: r(u)".into()),
            }),
            notes: vec![],
            elapsed_ms: Some(12),
        });
        let json = r.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
    }

    #[test]
    fn reported_checks_do_not_affect_status() {
        let mut r = Report::new("demo");
        r.push(Check {
            name: "info".into(),
            status: Status::Reported,
            residuals: None,
            notes: vec![],
            elapsed_ms: None,
        });
        assert!(r.passed());
    }

    #[test]
    fn strip_timings_removes_all() {
        let mut r = Report::new("demo");
        r.push(run_check("timed", || (Status::Pass, None, vec![])));
        r.strip_timings();
        assert!(r.checks.iter().all(|c| c.elapsed_ms.is_none()));
    }
}
