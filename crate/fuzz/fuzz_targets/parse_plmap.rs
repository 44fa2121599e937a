#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{parse_plmap, plmap_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(phi) = parse_plmap(s) {
        let v = plmap_to_json(&phi).expect("parsed maps are single-cell");
        assert_eq!(parse_plmap(&v.to_string()).unwrap(), phi);
    }
});
