//! Acceptance suite: runs every verification criterion at its pinned
//! tolerance and prints one line per criterion.
//!
//! The two asymptotic-expansion criteria (C05, C06) may legitimately land on
//! REPORTED instead of PASS: the published expansions carry no proof, and a
//! miss with converging window diagnostics is reported with the fitted value
//! rather than failed. Everything else must PASS outright.

use altseq::verify::{run_verification, CheckStatus, VerifyConfig};

#[test]
fn acceptance_criteria() {
    let cfg = VerifyConfig::default();
    let report = run_verification(&cfg).expect("suite must run");

    let mut failed = Vec::new();
    for r in &report.records {
        println!(
            "ACCEPTANCE {} {}: {} [{} ms]",
            r.id,
            r.status.label(),
            r.description,
            r.runtime_ms
        );
        println!("  expected: {}", r.expected);
        println!("  observed: {}", r.observed);
        let ok = match r.id.as_str() {
            // Expansion checks: REPORTED (converging diagnostics, fitted
            // value printed) is an accepted outcome.
            "C05" | "C06" => r.status != CheckStatus::Fail,
            _ => r.status == CheckStatus::Pass,
        };
        if !ok {
            failed.push(r.id.clone());
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn acceptance_runtime_budgets() {
    // C01 and C10 carry explicit runtime budgets of two minutes each; the
    // whole default suite must come in far under them.
    let start = std::time::Instant::now();
    let report = run_verification(&VerifyConfig::default()).unwrap();
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "suite took {elapsed:?}, over the 10 minute budget"
    );
    for r in &report.records {
        if r.id == "C01" || r.id == "C10" {
            assert!(r.runtime_ms < 120_000, "{} took {} ms", r.id, r.runtime_ms);
        }
    }
}
