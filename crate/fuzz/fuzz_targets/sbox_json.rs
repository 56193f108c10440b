#![no_main]

use libfuzzer_sys::fuzz_target;
use sboxkit::sbox::SBox;

fuzz_target!(|data: &[u8]| {
    if let Ok(sbox) = serde_json::from_slice::<SBox>(data) {
        let json = serde_json::to_vec(&sbox).unwrap();
        let round: SBox = serde_json::from_slice(&json).unwrap();
        assert_eq!(round, sbox);
    }
});
