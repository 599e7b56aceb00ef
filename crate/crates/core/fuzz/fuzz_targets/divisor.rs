#![no_main]

use libfuzzer_sys::fuzz_target;
use pbc_core::picard_lattice::DivisorClass;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(d) = DivisorClass::parse(s, usize::from(n % 32)) {
            assert_eq!(DivisorClass::parse(&d.to_string(), d.n()).unwrap(), d);
        }
    }
});
