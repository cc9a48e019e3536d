//! Versioned JSON reports.
//!
//! Every report has the same top-level keys: `version`, `command`,
//! `framework`, `results`, `trace` and `violations`. Command-specific data
//! lives under `results`; `trace` is `null` unless attack principles ran.

use serde::Serialize;
use serde_json::Value;

use crate::framework::{AttackStatus, Framework, ValueName};
use crate::saf::{ClosureTrace, Violation};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Af,
    Vaf,
    Saf,
    Svaf,
}

impl Flavor {
    pub fn of(fw: &Framework) -> Flavor {
        match (fw.is_value_labelled(), fw.is_claim_labelled()) {
            (true, true) => Flavor::Svaf,
            (true, false) => Flavor::Vaf,
            (false, true) => Flavor::Saf,
            (false, false) => Flavor::Af,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameworkSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub flavor: Flavor,
    pub arguments: usize,
    pub attacks: usize,
    pub non_attacks: usize,
    pub values: Vec<ValueName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fact: Option<ValueName>,
}

impl FrameworkSummary {
    pub fn of(fw: &Framework, source: Option<&str>) -> Self {
        let count = |s: AttackStatus| fw.statuses().filter(|(_, st)| *st == s).count();
        FrameworkSummary {
            source: source.map(str::to_string),
            flavor: Flavor::of(fw),
            arguments: fw.len(),
            attacks: count(AttackStatus::Present),
            non_attacks: count(AttackStatus::Absent),
            values: fw.values().to_vec(),
            fact: fw.fact().cloned(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub framework: FrameworkSummary,
    pub results: Value,
    pub trace: Option<ClosureTrace>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(command: impl Into<String>, framework: FrameworkSummary, results: Value) -> Self {
        Report {
            version: REPORT_VERSION,
            command: command.into(),
            framework,
            results,
            trace: None,
            violations: Vec::new(),
        }
    }

    /// Attaches a closure trace; its violations are lifted to the top level.
    pub fn with_trace(mut self, trace: ClosureTrace) -> Self {
        self.violations.extend(trace.violations.iter().cloned());
        self.trace = Some(trace);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values always serialize")
    }
}
