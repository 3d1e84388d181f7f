//! Verdict reports: per-group summaries and per-suite results, written as
//! pretty-printed JSON with a fixed key order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const TOOL_NAME: &str = "engel-verify";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// No violations, but some case hit a resource cap.
    Resource,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Resource => 2,
        }
    }
}

/// Invariants of one corpus group; subgroups are given by their orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub fingerprint: String,
    pub automorphisms: Vec<String>,
    /// Left out of every suite (order above the configured maximum).
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<ProfileSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub fitting: usize,
    pub layer: usize,
    pub gen_fitting: usize,
    pub soluble_radical: usize,
    pub odd_core: usize,
    pub fitting_height: Option<usize>,
    pub gen_fitting_height: usize,
    pub insoluble_length: usize,
    pub gen_fitting_series: Vec<usize>,
    pub upper_insoluble_series: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub engel: Vec<EngelSummary>,
}

/// Engel data for one conjugacy class representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelSummary {
    pub x: String,
    pub in_fitting: bool,
    /// Orders of `⟨E_{G,k}(x)⟩` for `k = 0, 1, …` until the chain repeats.
    pub generated_orders: Vec<usize>,
    pub descent_orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub group: String,
    /// The element or automorphism the case is about.
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<usize>,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceHit {
    pub group: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub statement: String,
    pub status: Status,
    pub cases: u64,
    pub passes: u64,
    pub notes: Vec<String>,
    pub violations: Vec<Violation>,
    pub resource_hits: Vec<ResourceHit>,
}

impl SuiteRecord {
    pub fn new(suite: &str, statement: &str) -> Self {
        SuiteRecord {
            suite: suite.to_string(),
            statement: statement.to_string(),
            status: Status::Pass,
            cases: 0,
            passes: 0,
            notes: Vec::new(),
            violations: Vec::new(),
            resource_hits: Vec::new(),
        }
    }

    /// Sets `status` from the violations and resource hits.
    pub fn finish(&mut self) {
        self.status = if !self.violations.is_empty() {
            Status::Fail
        } else if !self.resource_hits.is_empty() {
            Status::Resource
        } else {
            Status::Pass
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub tool: String,
    pub tool_version: String,
    pub corpus: String,
    pub status: Status,
    pub groups: Vec<GroupSummary>,
    pub suites: Vec<SuiteRecord>,
    /// Wall-clock milliseconds per suite; left out unless requested so that
    /// reports stay byte-identical between runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<Vec<(String, u64)>>,
}

impl VerdictReport {
    pub fn new(corpus: &str) -> Self {
        VerdictReport {
            tool: TOOL_NAME.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            corpus: corpus.to_string(),
            status: Status::Pass,
            groups: Vec::new(),
            suites: Vec::new(),
            timing_ms: None,
        }
    }

    /// Fail if any suite has a violation, else resource if any cap was hit.
    pub fn recompute_status(&mut self) {
        for s in &mut self.suites {
            s.finish();
        }
        let statuses: Vec<Status> = self.suites.iter().map(|s| s.status).collect();
        let group_errors = self.groups.iter().any(|g| g.error.is_some());
        self.status = if statuses.contains(&Status::Fail) {
            Status::Fail
        } else if statuses.contains(&Status::Resource) || group_errors {
            Status::Resource
        } else {
            Status::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn violation_count(&self) -> usize {
        self.suites.iter().map(|s| s.violations.len()).sum()
    }

    pub fn suite(&self, id: &str) -> Option<&SuiteRecord> {
        self.suites.iter().find(|s| s.suite == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn write_report(report: &VerdictReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_json())?;
    Ok(())
}

/// `<corpus>-<suite>-report.json`.
pub fn default_report_name(corpus_label: &str, suite: &str) -> String {
    format!("{corpus_label}-{suite}-report.json")
}
