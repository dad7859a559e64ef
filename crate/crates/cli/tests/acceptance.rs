//! Runs every acceptance criterion and prints one pass/fail line for each.

use divlift_cli::run::Options;
use divlift_cli::suite::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all(&Options::default());
    assert_eq!(results.len(), 7);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
