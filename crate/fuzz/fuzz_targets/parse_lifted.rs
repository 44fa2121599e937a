#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{lifted_to_json, parse_lifted};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_lifted(s) {
        assert_eq!(parse_lifted(&lifted_to_json(&f).to_string()).unwrap(), f);
    }
});
