//! Verification results as plain data.

use std::collections::BTreeMap;

use serde::Serialize;

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Set for checks that follow from the hom-set bijection rather than
    /// from a separate construction (unit, counit, triangle identities).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub derived_from_theorem: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub cardinalities: BTreeMap<String, usize>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub correspondence: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut CheckRecord {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            witness: None,
            derived_from_theorem: false,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn count(&mut self, name: &str, value: usize) {
        self.cardinalities.insert(name.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends another report's checks, prefixing names with its title.
    pub fn absorb(&mut self, other: Report) {
        for (k, v) in other.cardinalities {
            self.cardinalities.insert(format!("{}.{}", other.title, k), v);
        }
        for mut c in other.checks {
            c.name = format!("{}.{}", other.title, c.name);
            self.checks.push(c);
        }
        self.correspondence.extend(other.correspondence);
    }
}

impl CheckRecord {
    pub fn with_witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witness = Some(w.into());
        self
    }

    pub fn derived(&mut self) -> &mut Self {
        self.derived_from_theorem = true;
        self
    }
}
