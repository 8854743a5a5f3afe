#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmat::ideal::MonomialIdealModel;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let width = 1 + usize::from(head % 8);
    let zero_based = head & 0x80 != 0;
    if let Ok(ideal) = MonomialIdealModel::parse_text(text, width, zero_based) {
        let again = MonomialIdealModel::parse_text(&ideal.to_text(zero_based), width, zero_based).expect("re-parse");
        assert_eq!(again, ideal);
    }
});
