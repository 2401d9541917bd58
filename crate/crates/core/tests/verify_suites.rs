use calpha_core::verify::{run_suite, Suite, VerifyConfig};

#[test]
fn every_suite_passes_at_defaults() {
    let report = run_suite(Suite::All, &VerifyConfig::default());
    for c in &report.checks {
        println!("[{}] {} {}: {}", if c.passed { "ok" } else { "FAIL" }, c.suite, c.name, c.observed);
    }
    assert!(report.passed());
}
