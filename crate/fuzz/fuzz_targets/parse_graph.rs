#![no_main]

use libfuzzer_sys::fuzz_target;
use tropmat::matroid::{check_exchange, enumerate_bases, parse_graph};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_graph(data) {
        // Keep spanning-tree enumeration small enough for the fuzzer's time budget.
        if g.edges().len() <= 12 {
            let m = enumerate_bases(&g);
            assert!(m.num_bases() > 0);
            assert!(check_exchange(&m));
        }
    }
});
