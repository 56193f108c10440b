#![no_main]

use libfuzzer_sys::fuzz_target;
use sboxkit::pipeline::GenerationTrace;

fuzz_target!(|data: &[u8]| {
    if let Ok(trace) = serde_json::from_slice::<GenerationTrace>(data) {
        let json = serde_json::to_vec(&trace).unwrap();
        let round: GenerationTrace = serde_json::from_slice(&json).unwrap();
        assert_eq!(round, trace);
    }
});
