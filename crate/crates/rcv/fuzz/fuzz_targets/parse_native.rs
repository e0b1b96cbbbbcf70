#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(profile) = rcv::formats::parse_native(text) {
        // Anything that parses must survive the canonical round-trip.
        let canonical = rcv::formats::write_native(&profile);
        let reparsed = rcv::formats::parse_native(&canonical).expect("canonical form re-parses");
        assert_eq!(reparsed, profile);
    }
});
