use hcstem::selftest::selftest;

#[test]
fn battery_passes_up_to_rank_6() {
    let report = selftest(6).unwrap();
    let failures: Vec<String> = report.failures().map(|c| format!("{}: {}/{}", c.name, c.failed, c.checked)).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(report.checks.len() > 100);
}
