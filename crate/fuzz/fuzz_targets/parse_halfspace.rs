#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmat::minplus::TropicalHalfspace;

fuzz_target!(|data: &[u8]| {
    if let Ok(h) = TropicalHalfspace::parse_json(data) {
        let again = TropicalHalfspace::parse_json(h.to_json().to_string().as_bytes()).expect("re-parse");
        assert_eq!(again, h);
        assert!(h.contains(h.apex()).unwrap());
    }
});
