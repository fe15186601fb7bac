//! Executes a scenario's suites, possibly in parallel, and collects the
//! outcomes in a deterministic order.

use lcourant::CheckOutcome;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Entry, Report};
use crate::scenario::{InputError, Scenario};
use crate::suites::{self, Job};

/// How many worker threads to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    /// Everything on the calling thread.
    Sequential,
    /// A pool of the given size, or rayon's default when `None`.
    Pool(Option<usize>),
}

impl Threads {
    /// Reads `VERIFY_THREADS`: unset means the default pool, `0` means
    /// sequential, any other number caps the pool.
    pub fn from_env() -> Result<Self, InputError> {
        match std::env::var("VERIFY_THREADS") {
            Err(_) => Ok(Threads::Pool(None)),
            Ok(v) => Threads::parse(&v),
        }
    }

    pub fn parse(v: &str) -> Result<Self, InputError> {
        match v.trim().parse::<usize>() {
            Ok(0) => Ok(Threads::Sequential),
            Ok(k) => Ok(Threads::Pool(Some(k))),
            Err(_) => Err(InputError::new(
                "VERIFY_THREADS",
                format!("expected a non-negative integer, got {v:?}"),
            )),
        }
    }
}

fn run_job(job: &Job) -> Vec<CheckOutcome> {
    job().unwrap_or_else(|e| {
        vec![CheckOutcome::new("error", 0, false, || json!({"error": e.to_string()}))]
    })
}

fn run_jobs(jobs: &[Job], threads: Threads) -> Vec<Vec<CheckOutcome>> {
    match threads {
        Threads::Sequential => jobs.iter().map(run_job).collect(),
        Threads::Pool(_) => jobs.par_iter().map(run_job).collect(),
    }
}

/// Runs one suite; outcomes are sorted by case index, keeping job order
/// within a case.
pub fn run_suite(scenario: &Scenario, name: &str, threads: Threads) -> Vec<Entry> {
    let spec = suites::find(name).expect("scenario validation checks suite names");
    let outcomes: Vec<CheckOutcome> = match spec.jobs(scenario) {
        Ok(jobs) => run_jobs(&jobs, threads).into_iter().flatten().collect(),
        Err(e) => vec![CheckOutcome::new("setup", 0, false, || json!({"error": e.to_string()}))],
    };
    let mut entries: Vec<Entry> = outcomes
        .into_iter()
        .map(|o| Entry::from_outcome(name, scenario.n, o))
        .collect();
    entries.sort_by_key(|e| e.case_index);
    entries
}

/// Runs every suite of the scenario in order.
pub fn run(scenario: &Scenario, threads: Threads) -> Report {
    let body = || {
        scenario
            .suites
            .iter()
            .flat_map(|name| run_suite(scenario, name, threads))
            .collect::<Vec<_>>()
    };
    let entries = match threads {
        Threads::Pool(Some(k)) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(body),
            Err(_) => body(),
        },
        _ => body(),
    };
    Report::new(scenario, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_settings() {
        assert_eq!(Threads::parse("0").unwrap(), Threads::Sequential);
        assert_eq!(Threads::parse(" 3 ").unwrap(), Threads::Pool(Some(3)));
        assert_eq!(Threads::parse("many").unwrap_err().field, "VERIFY_THREADS");
        assert!(Threads::parse("-1").is_err());
    }

    #[test]
    fn order_does_not_depend_on_threads() {
        let sc = Scenario::parse(r#"{"n": 1, "suites": ["atiyah-calculus", "jacobi"], "samples": 4, "seed": 3}"#)
            .unwrap();
        let a = run(&sc, Threads::Sequential);
        let b = run(&sc, Threads::Pool(Some(3)));
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed, "{}", a.to_text());
        let cases: Vec<usize> = a.entries.iter().filter(|e| e.suite == "jacobi").map(|e| e.case_index).collect();
        assert!(cases.windows(2).all(|w| w[0] <= w[1]));
    }
}
