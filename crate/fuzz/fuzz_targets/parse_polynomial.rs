#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{parse_polynomial, polynomial_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial(s) {
        assert_eq!(parse_polynomial(&polynomial_to_json(&p).to_string()).unwrap(), p);
    }
});
