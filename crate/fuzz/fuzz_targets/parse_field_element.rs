#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::parse_field_element;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_field_element(s) {
        assert_eq!(parse_field_element(&x.to_string()).unwrap(), x);
    }
});
