//! The instance list for the acceptance seed is committed so that a change
//! in the generator (or in the PRNG crate) shows up as a diff.

use ladder_corners::verifier::{instance_flags, SuiteConfig};

const GOLDEN: &str = include_str!("fixtures/suite_seed42_7x7x3.txt");

#[test]
fn seed_42_instances_match_fixture() {
    let config = SuiteConfig::new(42, 200, 7, 7, 3);
    let lines: Vec<&str> = GOLDEN.lines().collect();
    assert_eq!(lines.len(), 200);
    for (index, line) in lines.iter().enumerate() {
        let expected = format!("{index} {}", instance_flags(&config, index as u64));
        assert_eq!(*line, expected);
    }
}
