#![no_main]

use libfuzzer_sys::fuzz_target;
use sboxkit::gridfile::{parse_grid, write_grid, Radix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for radix in [Radix::Decimal, Radix::Hex] {
        // must never panic; accepted inputs must survive write-then-parse
        if let Ok(sbox) = parse_grid(text, radix) {
            let round = parse_grid(&write_grid(&sbox, radix), radix).unwrap();
            assert_eq!(round, sbox);
        }
    }
});
