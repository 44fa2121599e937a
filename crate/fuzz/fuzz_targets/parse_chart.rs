#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{chart_to_json, parse_chart};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_chart(s) {
        assert_eq!(parse_chart(&chart_to_json(&c).to_string()).unwrap(), c);
    }
});
