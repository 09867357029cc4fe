//! Acceptance suite: every claim family the toolkit exists to certify, one
//! test per criterion, each printing a PASS/FAIL line. Suites are run once
//! per binary and shared across the criteria.

use geomom::report::{Record, Status, VerificationReport};
use geomom::suites::{run_suite, SuiteConfig, SuiteName};
use std::sync::OnceLock;

fn config() -> SuiteConfig {
    SuiteConfig::default()
}

fn geometry() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_suite(SuiteName::Geometry, &config()).expect("geometry suite"))
}

fn momentum() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_suite(SuiteName::Momentum, &config()).expect("momentum suite"))
}

fn constraints() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_suite(SuiteName::Constraints, &config()).expect("constraints suite"))
}

fn spectral() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run_suite(SuiteName::Spectral, &config()).expect("spectral suite"))
}

fn record<'a>(report: &'a VerificationReport, id: &str) -> &'a Record {
    report
        .records
        .iter()
        .find(|r| r.claim_id == id)
        .unwrap_or_else(|| panic!("missing record `{id}`"))
}

/// Asserts a pass record with at most the stated tolerance.
fn assert_pass(report: &VerificationReport, id: &str, tol: f64) {
    let r = record(report, id);
    assert_eq!(r.status, Status::Pass, "record `{id}`: {:?} (residual {:.3e})", r.status, r.residual);
    assert!(
        r.tolerance <= tol,
        "record `{id}` runs at tolerance {:.1e}, looser than the required {tol:.1e}",
        r.tolerance
    );
}

fn announce(criterion: &str, checks: impl FnOnce()) {
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(checks));
    match outcome {
        Ok(()) => println!("acceptance {criterion}: PASS"),
        Err(e) => {
            println!("acceptance {criterion}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

#[test]
fn criterion_1_geometry_golden_forms() {
    announce("criterion 1 (geometry golden forms at 1e-10)", || {
        let rep = geometry();
        for id in ["eq5-rx", "eq5-ry", "eq6-rx", "eq6-ry", "eq7-n", "eq7-M"] {
            assert_pass(rep, id, 1e-10);
            assert!(record(rep, id).samples >= 50);
        }
        // K from the fundamental forms, and M^2 - K identically zero
        assert_pass(rep, "gauss-K", 1e-10);
        assert_pass(rep, "vgp-zero", 1e-10);
    });
}

#[test]
fn criterion_2_operator_golden_tables() {
    announce("criterion 2 (operator coefficient tables at 1e-10)", || {
        let rep = momentum();
        for id in ["eq8-px", "eq9-py", "eq10-pz", "eq27-H", "siv-px", "siv-pz"] {
            assert_pass(rep, id, 1e-10);
        }
        // the p_y azimuthal-derivative sign is flagged, with the derived
        // reading certified at the golden tolerance
        let py = record(rep, "siv-py-sign");
        assert_eq!(py.status, Status::Flagged);
        assert!(py.residual <= 1e-10, "winning reading residual {:.3e}", py.residual);
    });
}

#[test]
fn criterion_3_commutator_suite() {
    announce("criterion 3 (commutators at 1e-9, Jacobi at 1e-8)", || {
        let rep = momentum();
        assert_pass(rep, "eq28-xx", 1e-9);
        let coords = ["x", "y", "z"];
        let momenta = ["px", "py", "pz"];
        for a in coords {
            for b in momenta {
                let id = format!("eq29-{a}-{b}");
                assert_pass(rep, &id, 1e-9);
                // at least 5 test functions at 30 points each
                assert!(record(rep, &id).samples >= 150);
            }
        }
        for a in momenta {
            for b in momenta {
                assert_pass(rep, &format!("eq30-{a}-{b}"), 1e-9);
            }
        }
        for a in coords {
            assert_pass(rep, &format!("eq34-{a}-H"), 1e-9);
        }
        for a in momenta {
            assert_pass(rep, &format!("eq35-{a}-H"), 1e-9);
        }
        assert_pass(rep, "jacobi-ppx", 1e-8);
    });
}

#[test]
fn criterion_4_constraint_chain() {
    announce("criterion 4 (constraint chain reproduced, closed in <= 8 steps)", || {
        let rep = constraints();
        assert_pass(rep, "chain-structure", 0.5);
        assert!(record(rep, "chain-structure").samples <= 8);
        // proportionality to the printed constraints
        for id in ["eq16-phi2", "eq17-phi3", "eq19-phi5"] {
            assert_pass(rep, id, 1e-10);
        }
        // the printed multiplier-term sign in the fourth constraint is not
        // proportional to the consistency bracket; the flipped reading is,
        // and the adjudication is recorded rather than silently applied
        let phi4 = record(rep, "eq18-phi4-sign");
        assert_eq!(phi4.status, Status::Flagged);
        assert!(phi4.residual <= 1e-10, "winning reading spread {:.3e}", phi4.residual);
        assert!(phi4.detail.as_deref().unwrap_or("").contains("adjudicated"));
        let lam = record(rep, "eq18-lambda");
        assert_eq!(lam.status, Status::Flagged);
        assert!(lam.residual <= 1e-10);
        assert_pass(rep, "eq19-u", 1e-10);
        assert_pass(rep, "chain-conservation", 1e-9);
    });
}

#[test]
fn criterion_5_dirac_bracket_table() {
    announce("criterion 5 (all 36 canonical Dirac brackets and C C^-1 = 1 at 1e-10)", || {
        let rep = constraints();
        let coords = ["x", "y", "z"];
        let momenta = ["px", "py", "pz"];
        let mut table_records = 0;
        for a in coords {
            for b in coords {
                assert_pass(rep, &format!("eq22-{a}-{b}"), 1e-10);
                table_records += 1;
            }
        }
        for a in coords {
            for b in momenta {
                assert_pass(rep, &format!("eq22-{a}-{b}"), 1e-10);
                table_records += 1;
            }
        }
        for a in momenta {
            for b in momenta {
                assert_pass(rep, &format!("eq22-{a}-{b}"), 1e-10);
                table_records += 1;
            }
        }
        // the momentum-coordinate order is covered by the antisymmetry record
        assert_pass(rep, "eq22-antisymmetry", 1e-10);
        assert_eq!(table_records + 9, 36);
        assert_pass(rep, "c-inverse", 1e-10);
    });
}

#[test]
fn criterion_6_classical_equations_of_motion() {
    announce("criterion 6 (velocity brackets exact; momentum bracket adjudicated)", || {
        let rep = constraints();
        assert_pass(rep, "eq24-xdot", 1e-10);
        assert!(record(rep, "eq24-xdot")
            .detail
            .as_deref()
            .unwrap_or("")
            .contains("structurally"));
        assert_pass(rep, "eq24-velocities", 1e-10);
        let pdot = record(rep, "eq25-pdot-index");
        assert_eq!(pdot.status, Status::Flagged);
        assert!(pdot.residual <= 1e-10);
        assert!(pdot.detail.as_deref().unwrap_or("").contains("summed reading"));
    });
}

#[test]
fn criterion_7_eigenfunction_suite() {
    announce("criterion 7 (eigen residuals at 1e-9, cross-coordinate at 1e-10)", || {
        let rep = spectral();
        for comp in ["px", "py", "pz"] {
            for system in ["spherical", "cartesian"] {
                let id = format!("eigen-{comp}-{system}");
                assert_pass(rep, &id, 1e-9);
                // at least 5 eigenvalues per component and coordinate system
                assert!(record(rep, &id).samples >= 5 * 25);
            }
            assert_pass(rep, &format!("cross-coordinate-{comp}"), 1e-10);
        }
    });
}

#[test]
fn criterion_8_self_adjointness_contrast() {
    announce("criterion 8 (symmetric at 1e-8; curvature-stripped defect above 1e-3)", || {
        let rep = spectral();
        for comp in ["px", "py", "pz"] {
            assert_pass(rep, &format!("hermiticity-{comp}"), 1e-8);
        }
        let contrast = record(rep, "mn-contrast");
        assert_eq!(contrast.status, Status::Pass);
        let detail = contrast.detail.as_deref().unwrap_or("");
        let defect: f64 = detail
            .split_whitespace()
            .rev()
            .find_map(|tok| tok.parse().ok())
            .expect("contrast detail carries the defect");
        assert!(defect > 1e-3, "stripped-operator defect {defect:.3e}");
    });
}

#[test]
fn criterion_9_discrepancy_adjudications() {
    announce("criterion 9 (flagged records adjudicate every suspect formula)", || {
        let cases = [
            (momentum(), "siv-py-sign"),
            (spectral(), "f3-label"),
            (constraints(), "eq25-pdot-index"),
            // discrepancies surfaced by the toolkit beyond the anticipated set
            (constraints(), "eq18-phi4-sign"),
            (momentum(), "eq35-mass-scaling"),
        ];
        for (rep, id) in cases {
            let r = record(rep, id);
            assert_eq!(r.status, Status::Flagged, "record `{id}`");
            let detail = r.detail.as_deref().unwrap_or("");
            // every adjudication carries numeric evidence for both readings
            assert!(
                (detail.contains("residual") || detail.contains("spread")) && detail.contains("e-"),
                "record `{id}` detail lacks numeric evidence: {detail}"
            );
            // the decision is numeric: the winning reading is certified tight
            assert!(r.residual <= r.tolerance, "record `{id}` winner residual {:.3e}", r.residual);
        }
    });
}

#[test]
fn all_suites_pass_end_to_end() {
    announce("end-to-end (no failing record in any suite)", || {
        for rep in [geometry(), momentum(), constraints(), spectral()] {
            let (pass, fail, flagged) = rep.counts();
            assert_eq!(fail, 0, "suite {} has {fail} failing records", rep.suite);
            assert!(pass > 0);
            println!(
                "  suite {}: {pass} pass, {fail} fail, {flagged} flagged",
                rep.suite
            );
        }
    });
}
