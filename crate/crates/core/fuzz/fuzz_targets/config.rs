#![no_main]

use libfuzzer_sys::fuzz_target;
use pbc_core::cli::{execute, Command, Invocation};
use pbc_core::config::Config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = Config::parse(text) else {
        return;
    };
    // serialization must round-trip whatever the parser accepted
    assert_eq!(Config::parse(&config.to_json()).unwrap(), config);
    // keep the exponential commands out of reach
    if config.blowups.len() <= 6 {
        for command in [Command::Lattice, Command::Exceptional, Command::Classify] {
            let _ = execute(&Invocation {
                command,
                config: text.to_string(),
                sheaf: None,
                ops: None,
                bound: Some(1),
            });
        }
    }
});
