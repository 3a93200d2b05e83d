//! Shared report schema for every check.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "fibcat-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// Outcome of a single check.
///
/// `bound` is the maximum index-set cardinality the quantifiers ranged
/// over; it is `None` for checks over finite, fully tabulated data. When
/// a quantifier over an infinite universe was cut at the bound,
/// `exhaustive` is false and a `bound_too_small` warning is attached, so
/// a pass is never silently partial.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub bound: Option<usize>,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub stats: BTreeMap<String, u64>,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Report {
    pub fn new(check: impl Into<String>, subject: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            subject: subject.into(),
            status: Status::Pass,
            bound: None,
            exhaustive: true,
            warnings: Vec::new(),
            stats: BTreeMap::new(),
            witnesses: Vec::new(),
            counterexample: None,
        }
    }

    /// Marks the report as a bounded verification.
    pub fn bounded(mut self, bound: usize, exhaustive: bool) -> Self {
        self.bound = Some(bound);
        self.set_exhaustive(exhaustive, bound);
        self
    }

    pub fn set_exhaustive(&mut self, exhaustive: bool, bound: usize) {
        self.exhaustive = self.exhaustive && exhaustive;
        let warning = format!("bound_too_small: quantifiers truncated at cardinality {bound}");
        if !self.exhaustive && !self.warnings.contains(&warning) {
            self.warnings.push(warning);
        }
    }

    pub fn stat(&mut self, key: &str, value: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += value;
    }

    pub fn witness(&mut self, w: Value) {
        self.witnesses.push(w);
    }

    /// Records a failure. Only the first counterexample is kept.
    pub fn fail(&mut self, counterexample: Value) {
        self.status = Status::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    /// The report as a JSON document tagged with [`SCHEMA_VERSION`].
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["schema"] = Value::from(SCHEMA_VERSION);
        v
    }

    pub fn is_pass(&self) -> bool {
        self.status.is_pass()
    }

    /// Folds a sub-report into this one, keeping the first failure.
    pub fn absorb(&mut self, other: &Report) {
        for (k, v) in &other.stats {
            self.stat(&format!("{}.{}", other.check, k), *v);
        }
        for w in &other.warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
        self.exhaustive &= other.exhaustive;
        if !other.is_pass() {
            self.fail(serde_json::json!({
                "check": other.check,
                "subject": other.subject,
                "counterexample": other.counterexample,
            }));
        }
    }
}
