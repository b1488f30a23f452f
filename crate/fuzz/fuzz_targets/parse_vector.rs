#![no_main]

use equigeo::report::parse_vector_json;
use libfuzzer_sys::fuzz_target;

// First byte picks the expected length, the rest is the JSON text.
fuzz_target!(|data: &[u8]| {
    let Some((&len, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(v) = parse_vector_json(text, len as usize) {
        assert_eq!(v.len(), len as usize);
        assert!(v.iter().all(|x| x.is_finite()));
        assert!(v.iter().any(|x| *x != 0.0));
    }
});
