#![no_main]

use libfuzzer_sys::fuzz_target;
use pbc_core::picard_lattice::Parent;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<Parent>() {
            assert_eq!(p.to_string().parse::<Parent>().unwrap(), p);
        }
    }
});
