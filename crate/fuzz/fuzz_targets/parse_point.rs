#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmat::minplus::TropicalPoint;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = TropicalPoint::parse_json(data) {
        let again = TropicalPoint::parse_json(p.to_json().to_string().as_bytes()).expect("re-parse");
        assert_eq!(again, p);
        assert!(p.canonical().is_canonical());
    }
});
