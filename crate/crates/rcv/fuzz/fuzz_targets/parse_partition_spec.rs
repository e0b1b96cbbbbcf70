#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use rcv::paradox::{split_by_partition, Partition};
use rcv::Profile;

fn profile() -> &'static Profile {
    static PROFILE: OnceLock<Profile> = OnceLock::new();
    PROFILE.get_or_init(|| {
        rcv::formats::parse_native(
            "candidates: A, B, C\n\
             6 ; P1 ; A > B > C\n\
             2 ; P2 ; B\n\
             5 ; P3 ; C > A\n\
             1 ; P2 ; A\n",
        )
        .unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let profile = profile();
    if let Ok(partition) = Partition::parse_precinct_spec(text, profile) {
        let (side1, side2) = split_by_partition(profile, &partition).expect("parsed split is valid");
        assert_eq!(
            side1.total_ballots() + side2.total_ballots(),
            profile.total_ballots()
        );
    }
});
