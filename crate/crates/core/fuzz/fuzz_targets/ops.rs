#![no_main]

use libfuzzer_sys::fuzz_target;
use pbc_core::ops::{parse_chain, Op};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(ops) = parse_chain(s) {
            for op in ops {
                assert_eq!(op.to_string().parse::<Op>().unwrap(), op);
            }
        }
    }
});
