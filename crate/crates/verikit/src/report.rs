use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Case {
    pub fn pass(id: impl Into<String>) -> Case {
        Case { id: id.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Case {
        Case { id: id.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    /// Ok(None) passes, Ok(Some(w)) fails with witness w, Err(e) fails with the error text.
    pub fn from_outcome(id: impl Into<String>, outcome: Result<Option<String>, String>) -> Case {
        match outcome {
            Ok(None) => Case::pass(id),
            Ok(Some(w)) => Case::fail(id, w),
            Err(e) => Case::fail(id, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: Params,
    pub cases: Vec<Case>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    /// The report with the wall-time field zeroed, for comparing runs.
    pub fn without_time(&self) -> SuiteReport {
        SuiteReport { elapsed_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = format!(
            "suite {} (n={}, k={}, samples={}, seed={:#X}): {} passed, {} failed, {} skipped in {} ms\n",
            self.suite,
            p.n,
            p.k,
            p.samples,
            p.seed,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.elapsed_ms
        );
        for c in self.failures() {
            let _ = writeln!(s, "FAIL {}: {}", c.id, c.witness.as_deref().unwrap_or(""));
        }
        s
    }
}
