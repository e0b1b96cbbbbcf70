#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use rcv::paradox::{apply_scenario, Scenario};
use rcv::Profile;

fn profile() -> &'static Profile {
    static PROFILE: OnceLock<Profile> = OnceLock::new();
    PROFILE.get_or_init(|| {
        rcv::formats::parse_native(
            "candidates: Kiss, Montroll, Wright\n\
             5 ; * ; Kiss > Montroll > Wright\n\
             4 ; P1 ; Wright > Kiss\n\
             3 ; * ; Montroll\n",
        )
        .unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let profile = profile();
    if let Ok(scenario) = Scenario::parse(text, profile) {
        let rendered = scenario.display(profile);
        let reparsed = Scenario::parse(&rendered, profile).expect("rendered scenario re-parses");
        assert_eq!(reparsed, scenario);
        // Application may fail (insufficient ballots) but must not panic,
        // and on success it must conserve the ballot count.
        if let Ok(modified) = apply_scenario(profile, &scenario) {
            assert_eq!(modified.total_ballots(), profile.total_ballots());
        }
    }
});
