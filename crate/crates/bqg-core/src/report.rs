//! Machine-readable verification reports.
//!
//! A report carries one verdict per executed check. `holds` records the
//! mathematical property value where one is meaningful (e.g. "the action is
//! isometric: no"); `pass` records whether the check completed consistently
//! with its predicted envelope — a nontrivially-acting pair failing the
//! isometry criterion is a *passing* check with `holds = false`. The
//! overall flag is the conjunction of `pass` values, and the report body
//! (everything except timing) is deterministic for a fixed configuration.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PropertyVerdict {
    pub property: String,
    /// The property value, when the check decides one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// Check-level success: completed and consistent.
    pub pass: bool,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<String>,
}

impl PropertyVerdict {
    pub fn new(property: &str, pass: bool, residual: f64) -> Self {
        PropertyVerdict {
            property: property.to_string(),
            holds: None,
            pass,
            residual,
            witness: None,
            cross_check: None,
        }
    }

    pub fn with_holds(mut self, holds: bool) -> Self {
        self.holds = Some(holds);
        self
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_cross_check(mut self, note: impl Into<String>) -> Self {
        self.cross_check = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: String,
    pub target: String,
    pub config: serde_json::Value,
    pub verdicts: Vec<PropertyVerdict>,
    pub overall: bool,
    /// Wall-clock milliseconds per check; excluded from the body.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timing_ms: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn new(target: impl Into<String>, config: serde_json::Value) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            target: target.into(),
            config,
            verdicts: Vec::new(),
            overall: true,
            timing_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, verdict: PropertyVerdict, elapsed_ms: u64) {
        self.overall &= verdict.pass;
        self.timing_ms.insert(verdict.property.clone(), elapsed_ms);
        self.verdicts.push(verdict);
    }

    /// The report with timing removed; identical configurations produce
    /// byte-identical serializations of this value.
    pub fn body(&self) -> VerificationReport {
        let mut body = self.clone();
        body.timing_ms = BTreeMap::new();
        body
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Markdown rendering, a pure function of the JSON body.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# Verification report: {}\n\n", self.target));
        out.push_str(&format!(
            "- schema: {}\n- tool version: {}\n- overall: {}\n\n",
            self.schema,
            self.tool_version,
            if self.overall { "PASS" } else { "FAIL" }
        ));
        out.push_str("| check | holds | pass | residual | witness | cross-check |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for v in &self.verdicts {
            out.push_str(&format!(
                "| {} | {} | {} | {:.3e} | {} | {} |\n",
                v.property,
                v.holds
                    .map(|h| if h { "yes" } else { "no" }.to_string())
                    .unwrap_or_else(|| "—".into()),
                if v.pass { "pass" } else { "FAIL" },
                v.residual,
                v.witness.as_deref().unwrap_or("—"),
                v.cross_check.as_deref().unwrap_or("—"),
            ));
        }
        out
    }

    /// Structural diff ignoring timing. Verdicts are compared on
    /// (property, holds, pass); witness or residual drift with identical
    /// verdicts is reported as benign.
    pub fn diff(&self, other: &VerificationReport) -> ReportDiff {
        let mut lines = Vec::new();
        let mut verdicts_differ = false;
        if self.target != other.target {
            lines.push(format!("target: '{}' vs '{}'", self.target, other.target));
        }
        let key = |r: &VerificationReport| -> BTreeMap<String, (Option<bool>, bool)> {
            r.verdicts
                .iter()
                .map(|v| (v.property.clone(), (v.holds, v.pass)))
                .collect()
        };
        let left = key(self);
        let right = key(other);
        for (prop, lv) in &left {
            match right.get(prop) {
                None => {
                    verdicts_differ = true;
                    lines.push(format!("check '{prop}' only in the first report"));
                }
                Some(rv) if rv != lv => {
                    verdicts_differ = true;
                    lines.push(format!("check '{prop}': holds/pass {lv:?} vs {rv:?}"));
                }
                Some(_) => {
                    let lw = self.verdicts.iter().find(|v| &v.property == prop);
                    let rw = other.verdicts.iter().find(|v| &v.property == prop);
                    if let (Some(lw), Some(rw)) = (lw, rw) {
                        if lw.witness != rw.witness {
                            lines.push(format!(
                                "check '{prop}': witnesses differ (benign; verdict identical)"
                            ));
                        }
                    }
                }
            }
        }
        for prop in right.keys() {
            if !left.contains_key(prop) {
                verdicts_differ = true;
                lines.push(format!("check '{prop}' only in the second report"));
            }
        }
        ReportDiff {
            identical_verdicts: !verdicts_differ,
            lines,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportDiff {
    pub identical_verdicts: bool,
    pub lines: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(witness: &str) -> VerificationReport {
        let mut r = VerificationReport::new("sym3 pair", serde_json::json!({"seed": 0}));
        r.push(PropertyVerdict::new("pentagon", true, 0.0).with_holds(true), 3);
        r.push(
            PropertyVerdict::new("isometry", true, 0.0)
                .with_holds(false)
                .with_witness(Some(witness.to_string())),
            5,
        );
        r
    }

    #[test]
    fn bodies_are_deterministic_and_timing_free() {
        let a = sample("w");
        let b = sample("w");
        assert_eq!(a.body().to_json(), b.body().to_json());
        assert!(!a.body().to_json().contains("timing"));
    }

    #[test]
    fn overall_tracks_pass_flags() {
        let mut r = VerificationReport::new("t", serde_json::Value::Null);
        r.push(PropertyVerdict::new("a", true, 0.0), 0);
        assert!(r.overall);
        r.push(PropertyVerdict::new("b", false, 1.0), 0);
        assert!(!r.overall);
    }

    #[test]
    fn witness_drift_is_benign_in_diffs() {
        let a = sample("w1");
        let b = sample("w2");
        let d = a.diff(&b);
        assert!(d.identical_verdicts);
        assert_eq!(d.lines.len(), 1);
        assert!(d.lines[0].contains("benign"));
    }

    #[test]
    fn verdict_changes_are_not_benign() {
        let a = sample("w");
        let mut b = sample("w");
        b.verdicts[1].holds = Some(true);
        let d = a.diff(&b);
        assert!(!d.identical_verdicts);
    }

    #[test]
    fn json_round_trips() {
        let a = sample("w");
        let text = a.to_json();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
        let md = a.to_markdown();
        assert!(md.contains("pentagon"));
        assert!(md.contains("isometry"));
    }
}
