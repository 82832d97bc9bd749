//! Machine-readable run reports.
//!
//! A report separates a volatile header (timestamp, host, elapsed time) from
//! a deterministic body (scope, instance count, violations). Reproducibility
//! checks hash only the body bytes.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::format::{chains_line, poset_line};
use extlab_core::checks::Violation;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Header {
    pub timestamp: u64,
    pub host: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Body {
    pub scope: String,
    pub instances_checked: u64,
    pub violations: Vec<ViolationRecord>,
}

/// One violation, replayable: the poset in line format, the decomposition
/// and triple (1-indexed, as in printed mathematics), the indices the check
/// was invoked with, and the two compared values as decimal/polynomial text.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ViolationRecord {
    pub poset: String,
    pub decomposition: Option<String>,
    pub triple: Option<Vec<usize>>,
    pub indices: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Violation> for ViolationRecord {
    fn from(v: &Violation) -> ViolationRecord {
        ViolationRecord {
            poset: poset_line(&v.poset),
            decomposition: v.chains.as_ref().map(chains_line),
            triple: v
                .triple
                .map(|t| vec![t.z1 + 1, t.z2 + 1, t.z3 + 1]),
            indices: v.indices.clone(),
            lhs: v.lhs.clone(),
            rhs: v.rhs.clone(),
        }
    }
}

impl Report {
    pub fn new(scope: String, instances_checked: u64, violations: Vec<ViolationRecord>, elapsed_ms: u64) -> Report {
        Report {
            header: Header {
                timestamp: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
                host: std::env::var("HOSTNAME").unwrap_or_else(|_| "unknown".into()),
                elapsed_ms,
            },
            body: Body {
                scope,
                instances_checked,
                violations,
            },
        }
    }

    /// The deterministic part, serialized canonically.
    pub fn body_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(&self.body).expect("body serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV mirror: one row per violation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scope,poset,decomposition,triple,indices,lhs,rhs\n");
        for v in &self.body.violations {
            let triple = v
                .triple
                .as_ref()
                .map(|t| {
                    t.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            let indices = v
                .indices
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                csv_cell(&self.body.scope),
                csv_cell(&v.poset),
                csv_cell(v.decomposition.as_deref().unwrap_or("")),
                csv_cell(&triple),
                csv_cell(&indices),
                csv_cell(&v.lhs),
                csv_cell(&v.rhs),
            ));
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
