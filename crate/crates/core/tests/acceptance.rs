//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p cbdiv --test acceptance -- --nocapture` to see the lines.

use cbdiv::reproduce::run_all;

#[test]
fn acceptance() {
    let outcomes = run_all(&[]);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    let slow: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.within_budget)
        .map(|o| o.id)
        .collect();
    println!(
        "{} of {} criteria passed; failing: {failed:?}; over budget: {slow:?}",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    assert!(slow.is_empty(), "criteria over their time budget: {slow:?}");
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
