#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{family_to_json, parse_family};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_family(s) {
        let v = family_to_json(&f);
        assert_eq!(family_to_json(&parse_family(&v.to_string()).unwrap()), v);
    }
});
