//! Machine-readable documents, golden comparisons and the verification report.

pub mod commands;
pub mod criteria;
pub mod deviations;
pub mod golden;
pub mod table3;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::jetcalc::VectorField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub coefficients: BTreeMap<String, String>,
}

impl BasisEntry {
    pub fn of(name: &str, y: &VectorField) -> Self {
        let coefficients = y
            .coords
            .iter()
            .map(|c| (c.name.clone(), y.coeff(c)))
            .filter(|(_, e)| !e.is_zero())
            .map(|(c, e)| (c, e.to_string()))
            .collect();
        BasisEntry {
            name: name.to_string(),
            coefficients,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    pub site: String,
    pub evidence: Vec<String>,
    pub allowlisted: bool,
}

/// Output of every command: `tables` carries the command-specific payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub stage: String,
    pub basis: Vec<BasisEntry>,
    pub tables: BTreeMap<String, serde_json::Value>,
    pub deviations: Vec<Finding>,
}

impl Document {
    pub fn new(stage: &str) -> Self {
        Document {
            stage: stage.to_string(),
            basis: vec![],
            tables: BTreeMap::new(),
            deviations: vec![],
        }
    }

    pub fn table<T: Serialize>(mut self, name: &str, value: &T) -> Self {
        self.tables.insert(
            name.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub table: String,
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub matched: bool,
    /// Known misprint explaining a mismatch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deviation: Option<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Comparison {
    pub fn new(
        table: &str,
        key: &str,
        expected: &str,
        computed: &str,
        matched: bool,
        deviation: Option<&str>,
        note: &str,
    ) -> Self {
        Comparison {
            table: table.into(),
            key: key.into(),
            expected: expected.into(),
            computed: computed.into(),
            matched,
            deviation: deviation.map(String::from),
            note: note.into(),
        }
    }

    pub fn exact(table: &str, key: &str, expected: &str, computed: &str) -> Self {
        Comparison::new(
            table,
            key,
            expected,
            computed,
            expected == computed,
            None,
            "",
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub stage: String,
    pub criteria: Vec<CriterionResult>,
    pub comparisons: Vec<Comparison>,
    pub deviations: Vec<Finding>,
    pub timing_ms: u64,
}

impl Report {
    /// Mismatches not explained by an accepted misprint.
    pub fn unexplained(&self, strict: bool) -> Vec<&Comparison> {
        let allowed: Vec<&str> = self
            .deviations
            .iter()
            .filter(|d| d.allowlisted && !strict)
            .map(|d| d.id.as_str())
            .collect();
        self.comparisons
            .iter()
            .filter(|c| !c.matched && !c.deviation.as_deref().is_some_and(|d| allowed.contains(&d)))
            .collect()
    }

    pub fn passed(&self, strict: bool) -> bool {
        let findings_ok = self.deviations.iter().all(|d| d.allowlisted && !strict);
        self.criteria.iter().all(|c| c.passed) && self.unexplained(strict).is_empty() && findings_ok
    }
}
