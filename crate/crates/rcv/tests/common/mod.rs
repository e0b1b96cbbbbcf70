//! Shared proptest strategies for the integration tests.

use proptest::prelude::*;

use rcv::profile::{BallotGroup, Candidate, Profile, Ranking};

/// Well-formed random profiles: up to 5 candidates, up to 12 groups,
/// counts below 40, a few precinct labels.
pub fn arb_profile() -> impl Strategy<Value = Profile> {
    let names = ["A", "B", "C", "D", "E"];
    (2usize..=5).prop_flat_map(move |n| {
        let ranking =
            proptest::sample::subsequence((0..n).collect::<Vec<usize>>(), 1..=n).prop_shuffle();
        let group = (ranking, 1u64..40, prop_oneof!["\\*", "P[1-3]"]);
        proptest::collection::vec(group, 0..12).prop_map(move |specs| {
            let roster = names[..n].iter().map(|s| Candidate::new(*s)).collect();
            let groups = specs
                .into_iter()
                .map(|(entries, count, precinct)| {
                    BallotGroup::with_precinct(Ranking::new(entries).unwrap(), count, precinct)
                })
                .collect();
            Profile::new(roster, groups).unwrap()
        })
    })
}
