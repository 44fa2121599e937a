#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmob::io::{parse_pl_function, pl_function_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_pl_function(s) {
        assert_eq!(parse_pl_function(&pl_function_to_json(&l).to_string()).unwrap(), l);
    }
});
