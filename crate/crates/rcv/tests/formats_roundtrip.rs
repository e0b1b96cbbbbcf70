//! Format-level integration tests: golden output, fixture parsing, and
//! randomized round-trip / cross-format properties.

mod common;

use common::arb_profile;
use proptest::prelude::*;

use rcv::formats::{parse_native, parse_preflib, write_native, write_preflib};
use rcv::profile::{BallotGroup, Profile};

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(path).expect("fixture exists")
}

#[test]
fn burlington_fixture_totals() {
    let p = parse_native(&fixture("burlington3.rcv")).unwrap();
    assert_eq!(p.total_ballots(), 8833);
    assert_eq!(p.candidate_names(), vec!["Kiss", "Montroll", "Wright"]);
    assert_eq!(p.groups().len(), 9);
}

#[test]
fn minneapolis_fixture_totals() {
    let p = parse_native(&fixture("minneapolis3.rcv")).unwrap();
    assert_eq!(p.total_ballots(), 8915);
    assert_eq!(p.groups().len(), 9);
}

#[test]
fn precinct_fixture_matches_the_untagged_ballots() {
    let tagged = parse_native(&fixture("minneapolis3_precincts.rcv")).unwrap();
    let untagged = parse_native(&fixture("minneapolis3.rcv")).unwrap();
    assert_eq!(tagged.total_ballots(), untagged.total_ballots());
    assert_eq!(tagged.precinct_labels(), vec!["G1", "G2"]);
    // Collapsing the precinct tags recovers the untagged profile.
    let collapsed = Profile::new(
        tagged.roster().to_vec(),
        tagged
            .groups()
            .iter()
            .map(|g| BallotGroup::new(g.ranking.clone(), g.count))
            .collect(),
    )
    .unwrap()
    .normalize();
    assert_eq!(collapsed, untagged);
}

#[test]
fn writer_emits_the_golden_canonical_form() {
    let input = include_str!("data/precincts_input.rcv");
    let golden = include_str!("data/precincts_golden.rcv");
    let profile = parse_native(input).unwrap();
    assert_eq!(write_native(&profile), golden);
}

#[test]
fn preflib_transcription_equals_the_native_fixture() {
    let native = parse_native(&fixture("burlington3.rcv")).unwrap();
    let soi = "\
# NUMBER ALTERNATIVES: 3
# ALTERNATIVE NAME 1: Kiss
# ALTERNATIVE NAME 2: Montroll
# ALTERNATIVE NAME 3: Wright
2043: 1,2,3
371: 1,3,2
568: 1
1332: 2,1,3
767: 2,3,1
455: 2
495: 3,1,2
1513: 3,2,1
1289: 3
";
    assert_eq!(parse_preflib(soi).unwrap(), native);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip_is_normalization(p in arb_profile()) {
        let text = write_native(&p);
        prop_assert_eq!(parse_native(&text).unwrap(), p.normalize());
    }

    #[test]
    fn writers_are_deterministic(p in arb_profile()) {
        prop_assert_eq!(write_native(&p), write_native(&p));
    }

    #[test]
    fn preflib_round_trip_loses_only_precincts(p in arb_profile()) {
        let there = write_preflib(&p);
        let back = parse_preflib(&there).unwrap();
        // A second pass is the identity: precincts are already gone.
        prop_assert_eq!(parse_preflib(&write_preflib(&back)).unwrap(), back.clone());
        prop_assert_eq!(back.total_ballots(), p.total_ballots());
    }

    #[test]
    fn normalize_is_idempotent(p in arb_profile()) {
        let once = p.normalize();
        prop_assert_eq!(once.normalize(), once);
    }
}
