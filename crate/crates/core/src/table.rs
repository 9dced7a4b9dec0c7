//! Labeled coefficient tables, erratum findings, and identity-check records.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: usize,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub label: String,
    pub order: usize,
    pub provenance: Provenance,
    pub entries: Vec<TableEntry>,
    pub errata: Vec<Finding>,
}

impl CoeffTable {
    pub fn new(label: impl Into<String>, provenance: Provenance, first: usize, values: Vec<Scalar>) -> Self {
        let order = first + values.len().saturating_sub(1);
        CoeffTable {
            label: label.into(),
            order,
            provenance,
            entries: values.into_iter().enumerate().map(|(i, value)| TableEntry { n: first + i, value }).collect(),
            errata: Vec::new(),
        }
    }

    pub fn get(&self, n: usize) -> Option<&Scalar> {
        self.entries.iter().find(|e| e.n == n).map(|e| &e.value)
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter().map(|e| &e.value)
    }

    pub fn with_findings(mut self, findings: Vec<Finding>) -> Self {
        self.errata.extend(findings);
        self
    }
}

/// Outcome of comparing a printed formula against an exact oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub topic: String,
    pub as_printed_holds: bool,
    pub resolution: String,
    pub evidence: Vec<String>,
}

/// One exact identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), passed, detail }
    }

    /// Passes when `lhs == rhs`; otherwise records the exact difference.
    pub fn equal(name: impl Into<String>, lhs: &Scalar, rhs: &Scalar) -> Self {
        if lhs == rhs {
            Check::new(name, true, None)
        } else {
            Check::new(name, false, Some(format!("lhs - rhs = {}", lhs - rhs)))
        }
    }

    pub fn all_equal<'a>(name: impl Into<String>, pairs: impl IntoIterator<Item = (usize, &'a Scalar, &'a Scalar)>) -> Self {
        let bad: Vec<String> = pairs
            .into_iter()
            .filter(|(_, a, b)| a != b)
            .map(|(k, a, b)| format!("[{k}] lhs - rhs = {}", a - b))
            .collect();
        if bad.is_empty() {
            Check::new(name, true, None)
        } else {
            Check::new(name, false, Some(bad.join("; ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_round_trip() {
        let t = CoeffTable::new("g", Provenance::ClosedForm, 1, vec![Scalar::one(), "-t*Q^2/(1 - Q^2)".parse().unwrap()])
            .with_findings(vec![Finding {
                topic: "x".into(),
                as_printed_holds: false,
                resolution: "y".into(),
                evidence: vec![],
            }]);
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains(r#""value":"-t*Q^2/(1 - Q^2)""#));
        assert!(s.contains(r#""provenance":"closed-form""#));
        assert_eq!(serde_json::from_str::<CoeffTable>(&s).unwrap(), t);
    }

    #[test]
    fn check_reports_difference() {
        let c = Check::equal("x", &Scalar::one(), &Scalar::t());
        assert!(!c.passed);
        assert_eq!(c.detail.as_deref(), Some("lhs - rhs = (1 - t)"));
    }
}
