#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{fixture_to_json, parse_fixture};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_fixture(s) {
        let v = fixture_to_json(&f);
        assert_eq!(fixture_to_json(&parse_fixture(&v.to_string()).unwrap()), v);
    }
});
