//! The selftest campaign must come back green and be reproducible from its
//! seed alone.

use plgroups::campaign::run_campaign;

#[test]
fn campaign_is_green_and_deterministic() {
    let first = run_campaign(42, 30);
    assert!(!first.is_empty());
    for check in &first {
        assert!(check.pass, "CHECK {} FAIL {}", check.name, check.detail);
    }
    let names: Vec<_> = first.iter().map(|c| c.name.clone()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted, "report order is fixed by name");

    let second = run_campaign(42, 30);
    let render = |checks: &[plgroups::campaign::Check]| {
        checks
            .iter()
            .map(|c| format!("CHECK {} {} {}", c.name, c.pass, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(
        render(&first),
        render(&second),
        "identical seeds give identical reports"
    );
}
