//! The report document and its text summary.

use std::fmt::Write as _;

use lcourant::CheckOutcome;
use serde::Serialize;
use serde_json::Value;

use crate::scenario::Scenario;

/// One evaluated identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub suite: String,
    pub check: String,
    pub case_index: usize,
    pub n: usize,
    pub residual_is_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Entry {
    pub fn from_outcome(suite: &str, n: usize, o: CheckOutcome) -> Self {
        Entry {
            suite: suite.to_string(),
            check: o.check,
            case_index: o.case_index,
            n,
            residual_is_zero: o.residual_is_zero,
            witness: o.witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioEcho {
    pub n: usize,
    pub suites: Vec<String>,
    pub samples: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub coeff_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub scenario: ScenarioEcho,
    pub passed: bool,
    pub summary: Vec<SuiteSummary>,
    pub entries: Vec<Entry>,
}

impl Report {
    /// Assembles a report; entries must already be ordered by suite, then case.
    pub fn new(scenario: &Scenario, entries: Vec<Entry>) -> Self {
        let summary = scenario
            .suites
            .iter()
            .map(|name| {
                let mine = entries.iter().filter(|e| &e.suite == name);
                let (checks, failures) =
                    mine.fold((0, 0), |(c, f), e| (c + 1, f + usize::from(!e.residual_is_zero)));
                SuiteSummary {
                    suite: name.clone(),
                    checks,
                    failures,
                }
            })
            .collect();
        Report {
            scenario: ScenarioEcho {
                n: scenario.n,
                suites: scenario.suites.clone(),
                samples: scenario.samples,
                seed: scenario.seed,
                max_degree: scenario.max_degree,
                coeff_bound: scenario.coeff_bound,
            },
            passed: entries.iter().all(|e| e.residual_is_zero),
            summary,
            entries,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.residual_is_zero)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One line per suite, then the first failing entry of each failing suite.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.summary.iter().map(|s| s.suite.len()).max().unwrap_or(0);
        for s in &self.summary {
            let status = if s.failures == 0 { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{:width$}  {:>6} checks  {:>4} failed  {status}", s.suite, s.checks, s.failures);
        }
        for s in self.summary.iter().filter(|s| s.failures > 0) {
            if let Some(e) = self.failures().find(|e| e.suite == s.suite) {
                let w = e.witness.as_ref().map(Value::to_string).unwrap_or_default();
                let _ = writeln!(out, "first failure in {}: {} (case {}): {w}", e.suite, e.check, e.case_index);
            }
        }
        let total: usize = self.summary.iter().map(|s| s.checks).sum();
        let failed: usize = self.summary.iter().map(|s| s.failures).sum();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict}: {total} checks, {failed} failed");
        out
    }
}
