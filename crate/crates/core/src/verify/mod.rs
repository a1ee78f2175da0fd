//! Named verification suites. Each case compares dimensions computed by the
//! homology engine against an oracle that does not go through it
//! (Ω¹ constructions, closed-form weight counts, Ext tables, or a second
//! model of the same space).

mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::budget::Budget;
use crate::hochschild::HochschildError;
use crate::homalg::HomalgError;
use crate::simplicial::SimplicialError;

pub use suites::{
    registered_equivalence, suite_hodge_cohomology, suite_homotopy_invariance, suite_localization,
    suite_low_degree, suite_smooth_hodge, suite_structural, HodgeCohomologyCase, LocalizationCase,
};

pub const SUITES: [&str; 6] = [
    "low_degree",
    "localization",
    "smooth_hodge",
    "homotopy_invariance",
    "hodge_cohomology",
    "structural",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown corpus {0:?}; only \"default\" is built in")]
    UnknownCorpus(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

impl VerifyError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            VerifyError::Hochschild(HochschildError::BudgetExceeded { .. })
                | VerifyError::Homalg(HomalgError::Hochschild(HochschildError::BudgetExceeded { .. }))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub inputs: BTreeMap<String, String>,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl CaseReport {
    /// Passes when the vectors agree and no extra check failed.
    pub(crate) fn compare(
        inputs: &[(&str, String)],
        expected: Vec<usize>,
        computed: Vec<usize>,
        failures: Vec<String>,
        started: Instant,
    ) -> Self {
        let ok = expected == computed && failures.is_empty();
        CaseReport {
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            expected,
            computed,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            notes: failures,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub verdict: Verdict,
    pub cases: Vec<CaseReport>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub(crate) fn new(suite: &str, cases: Vec<CaseReport>, started: Instant) -> Self {
        let verdict = if cases.iter().all(CaseReport::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        SuiteReport {
            suite: suite.to_string(),
            verdict,
            cases,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.cases {
            c.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    /// One line per case, for humans.
    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}: {:?}\n", self.suite, self.verdict);
        for c in &self.cases {
            let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "  [{:?}] {} expected {:?} computed {:?}",
                c.verdict,
                inputs.join(" "),
                c.expected,
                c.computed
            ));
            for n in &c.notes {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        out
    }
}

/// Runs a suite on its built-in corpus.
pub fn run_suite(name: &str, corpus: &str, budget: Budget) -> Result<SuiteReport, VerifyError> {
    if corpus != "default" {
        return Err(VerifyError::UnknownCorpus(corpus.to_string()));
    }
    suites::run_default(name, budget)
}

#[cfg(test)]
mod tests;
