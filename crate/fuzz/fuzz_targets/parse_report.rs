#![no_main]

use equigeo::report::{parse_report, to_json};
use libfuzzer_sys::fuzz_target;

// Anything that parses must survive a write/read round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_report(text) {
        if let Ok(json) = to_json(&r) {
            assert_eq!(parse_report(&json).expect("re-parse"), r);
        }
    }
});
