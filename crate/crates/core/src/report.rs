//! Machine-readable verification report.

use serde::{Serialize, Serializer};

fn finite_or_null<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) if v.is_finite() => s.serialize_f64(*v),
        _ => s.serialize_none(),
    }
}

/// One check: what it measures, the property it certifies, and the outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    #[serde(serialize_with = "finite_or_null")]
    pub measured: Option<f64>,
    #[serde(serialize_with = "finite_or_null")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckRecord {
    pub fn new(id: &str, anchor: &str, pass: bool) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            pass,
            measured: None,
            threshold: None,
            detail: String::new(),
        }
    }

    pub fn measured(mut self, measured: f64, threshold: f64) -> CheckRecord {
        self.measured = Some(measured);
        self.threshold = Some(threshold);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> CheckRecord {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub depth: usize,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(depth: usize) -> VerificationReport {
        VerificationReport {
            depth,
            pass: true,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.pass &= record.pass;
        self.checks.push(record);
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_flag_tracks_records() {
        let mut r = VerificationReport::new(3);
        r.push(CheckRecord::new("a", "first", true).measured(0.5, 1.0));
        assert!(r.pass);
        r.push(CheckRecord::new("b", "second", false).measured(f64::NAN, 1.0));
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let json = r.to_json();
        assert!(json.contains("\"measured\": null"));
        assert!(!json.contains("detail"));
    }
}
