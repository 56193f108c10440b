#![no_main]

use libfuzzer_sys::fuzz_target;
use sboxkit::chaos::ChaosParams;

fuzz_target!(|data: &[u8]| {
    if let Ok(params) = serde_json::from_slice::<ChaosParams>(data) {
        // the hex encodings are authoritative and must round-trip exactly
        let back = ChaosParams::from_hex(&params.x0_hex(), &params.p_hex()).unwrap();
        assert_eq!(back, params);
    }
    // the bare hex parser takes attacker-controlled strings too
    if let Ok(text) = std::str::from_utf8(data) {
        if let Some((x0_hex, p_hex)) = text.split_once(',') {
            let _ = ChaosParams::from_hex(x0_hex, p_hex);
        }
    }
});
