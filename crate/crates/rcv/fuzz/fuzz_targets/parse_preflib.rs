#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(profile) = rcv::formats::parse_preflib(text) {
        let rewritten = rcv::formats::write_preflib(&profile);
        let reparsed = rcv::formats::parse_preflib(&rewritten).expect("writer output re-parses");
        assert_eq!(reparsed, profile);
    }
});
