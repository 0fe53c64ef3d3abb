//! Runs the eleven acceptance criteria and prints one line per criterion.

use ekq::selftest::{run_criterion, summary_line, CRITERIA};
use std::time::Instant;

#[test]
fn acceptance() {
    let started = Instant::now();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, started);
        println!("{}  [{:.1} s]", summary_line(&r), r.seconds);
        for c in r.failures() {
            println!("    {} : {} : {}", c.name, c.anchor, c.residual.as_deref().unwrap_or(""));
        }
        if !r.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
