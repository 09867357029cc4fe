//! Structured verification reports: one record per certified claim, with a
//! text table renderer and a stable JSON form.
//!
//! JSON schema (field names and types are frozen):
//!
//! ```json
//! {
//!   "suite": "geometry",
//!   "toolkit_version": "0.1.0",
//!   "config": {
//!     "hbar": 1.0, "mass": 1.0, "radius": 1.0, "seed": 42,
//!     "n_theta": 48, "n_phi": 96,
//!     "tol_override": null, "mn_term_enabled": true
//!   },
//!   "records": [
//!     {
//!       "claim_id": "eq7-M",
//!       "formula": "M = -1/r",
//!       "tolerance": 1e-10,
//!       "residual": 0.0,
//!       "samples": 50,
//!       "status": "pass",
//!       "detail": "optional free text"
//!     }
//!   ]
//! }
//! ```
//!
//! `status` is `"pass"` iff `residual <= tolerance`, `"fail"` otherwise;
//! `"flagged"` is reserved for adjudications of suspect printed formulas,
//! which carry the numerically decided reading in `detail` and never fail
//! the run.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub claim_id: String,
    /// The identity under check, as printed in the text being verified.
    pub formula: String,
    pub tolerance: f64,
    pub residual: f64,
    pub samples: usize,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    /// Pass/fail record; the status derives from the residual alone.
    pub fn check(id: &str, formula: &str, tolerance: f64, residual: f64, samples: usize) -> Record {
        Record {
            claim_id: id.to_string(),
            formula: formula.to_string(),
            tolerance,
            residual,
            samples,
            status: if residual <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            detail: None,
        }
    }

    /// Adjudication record for a suspect printed formula; stays out of the
    /// pass/fail exit logic.
    pub fn flagged(
        id: &str,
        formula: &str,
        tolerance: f64,
        residual: f64,
        samples: usize,
        detail: String,
    ) -> Record {
        Record {
            claim_id: id.to_string(),
            formula: formula.to_string(),
            tolerance,
            residual,
            samples,
            status: Status::Flagged,
            detail: Some(detail),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Record {
        self.detail = Some(detail);
        self
    }
}

/// Echo of every scale and tolerance knob that influenced the run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub hbar: f64,
    pub mass: f64,
    pub radius: f64,
    pub seed: u64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub tol_override: Option<f64>,
    pub mn_term_enabled: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub toolkit_version: String,
    pub config: ConfigEcho,
    pub records: Vec<Record>,
}

impl VerificationReport {
    pub fn new(suite: &str, config: ConfigEcho) -> VerificationReport {
        VerificationReport {
            suite: suite.to_string(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: Vec<Record>) {
        self.records.extend(records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in &self.records {
            match r.status {
                Status::Pass => c.0 += 1,
                Status::Fail => c.1 += 1,
                Status::Flagged => c.2 += 1,
            }
        }
        c
    }

    /// Deterministic machine-readable form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn from_json(text: &str) -> Result<VerificationReport, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Human-readable table, one line per record.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite: {}  (toolkit {}; hbar={} m={} r={} seed={} grid={}x{}{}{})",
            self.suite,
            self.toolkit_version,
            self.config.hbar,
            self.config.mass,
            self.config.radius,
            self.config.seed,
            self.config.n_theta,
            self.config.n_phi,
            match self.config.tol_override {
                Some(t) => format!(" tol-override={t:.1e}"),
                None => String::new(),
            },
            if self.config.mn_term_enabled {
                ""
            } else {
                " Mn-term-disabled"
            },
        );
        let _ = writeln!(
            out,
            "{:<26} {:>9} {:>12} {:>8}  {:<7} formula",
            "claim", "tol", "residual", "samples", "status"
        );
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAGGED",
            };
            let _ = writeln!(
                out,
                "{:<26} {:>9.1e} {:>12.3e} {:>8}  {:<7} {}",
                r.claim_id, r.tolerance, r.residual, r.samples, status, r.formula
            );
            if let Some(detail) = &r.detail {
                let _ = writeln!(out, "{:<26} {}", "", detail);
            }
        }
        let (pass, fail, flagged) = self.counts();
        let _ = writeln!(out, "{} pass, {} fail, {} flagged", pass, fail, flagged);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_residual() {
        let r = Record::check("a", "1 = 1", 1e-9, 0.0, 10);
        assert_eq!(r.status, Status::Pass);
        let r = Record::check("b", "1 = 2", 1e-9, 1.0, 10);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn json_round_trip_preserves_everything() {
        let mut rep = VerificationReport::new(
            "geometry",
            ConfigEcho {
                hbar: 1.0,
                mass: 1.0,
                radius: 2.0,
                seed: 42,
                n_theta: 48,
                n_phi: 96,
                tol_override: None,
                mn_term_enabled: true,
            },
        );
        rep.push(Record::check("eq7-M", "M = -1/r", 1e-10, 3.2e-13, 50));
        rep.push(Record::flagged(
            "siv-py-sign",
            "p_y d_phi term sign",
            1e-9,
            2.1e-12,
            30,
            "corrected sign passes; printed sign residual 8.8e-1".into(),
        ));
        let text = rep.to_json();
        let back = VerificationReport::from_json(&text).unwrap();
        assert_eq!(back.records.len(), 2);
        assert_eq!(back.records[0].claim_id, "eq7-M");
        assert_eq!(back.records[1].status, Status::Flagged);
        assert_eq!(back.to_json(), text);
        assert!(rep.passed());
    }

    #[test]
    fn empty_report_renders_header_only_table() {
        let rep = VerificationReport::new(
            "momentum",
            ConfigEcho {
                hbar: 1.0,
                mass: 1.0,
                radius: 1.0,
                seed: 1,
                n_theta: 8,
                n_phi: 8,
                tol_override: Some(1e-8),
                mn_term_enabled: false,
            },
        );
        let text = rep.render_text();
        assert!(text.contains("suite: momentum"));
        assert!(text.contains("0 pass, 0 fail, 0 flagged"));
        assert_eq!(text.lines().count(), 3);
    }
}
