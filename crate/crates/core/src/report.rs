//! Structured verification outcomes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::class::{CohClass, SerializedClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedCap,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedCap => "skipped-cap",
        })
    }
}

/// One checked claim.
///
/// `values` holds witness quantities rendered as strings (exact rationals,
/// dimensions, counts); `witness` holds an offending class on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SerializedClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Entry {
    pub fn new(check: impl Into<String>, status: Status) -> Self {
        Entry {
            check: check.into(),
            params: BTreeMap::new(),
            status,
            values: BTreeMap::new(),
            witness: None,
            wall_time_ms: None,
        }
    }

    pub fn pass_if(check: impl Into<String>, ok: bool) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(mut self, class: Option<&CohClass>) -> Self {
        self.witness = class.map(CohClass::to_serialized);
        self
    }

    fn sort_key(&self) -> (&str, Vec<(&str, i64)>) {
        (&self.check, self.params.iter().map(|(k, v)| (k.as_str(), *v)).collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Orders entries by check name, then parameters.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn find(&self, check: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check == check)
    }
}
