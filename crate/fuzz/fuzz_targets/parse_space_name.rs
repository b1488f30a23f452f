#![no_main]

use equigeo::catalog::{Family, SpaceDescriptor};
use libfuzzer_sys::fuzz_target;

// "<name> <n> <n1> <n2>"; descriptors that validate must build (kept small).
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut parts = text.split_whitespace();
    let Some(Ok(family)) = parts.next().map(str::parse::<Family>) else {
        return;
    };
    let mut num = || parts.next().and_then(|s| s.parse::<usize>().ok());
    let (n, n1, n2) = (num(), num(), num());
    if let Ok(d) = SpaceDescriptor::from_parts(family, n, n1, n2) {
        let small = [n, n1, n2].iter().flatten().all(|&k| k <= 3);
        if small {
            let s = d.build().expect("validated descriptor builds");
            assert_eq!(s.dim_m() + s.h().dim(), s.algebra().dim());
        }
    }
});
