#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{measure_to_json, parse_measure};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_measure(s) {
        assert!(parse_measure(&measure_to_json(&m).to_string()).unwrap().same_measure(&m));
    }
});
