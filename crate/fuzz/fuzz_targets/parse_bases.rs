#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmat::matroid::{parse_bases, check_exchange};

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = parse_bases(data) {
        assert!(check_exchange(&m));
        let again = parse_bases(m.to_json().to_string().as_bytes()).expect("re-parse");
        assert_eq!(again, m);
    }
});
