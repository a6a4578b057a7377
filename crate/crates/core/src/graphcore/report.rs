//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::Mode;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub pass: bool,
    pub details: Value,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, mode: Mode, pass: bool, details: Value) -> Self {
        CheckRecord { name: name.into(), mode: mode.label(), seed: mode.seed(), samples: mode.samples(), pass, details }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub construction: String,
    pub q: u32,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(construction: impl Into<String>, q: u32) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            construction: construction.into(),
            q,
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            timings: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
