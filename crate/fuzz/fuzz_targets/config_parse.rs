#![no_main]

use fourbody::config::RunConfig;
use libfuzzer_sys::fuzz_target;

// Parsing plus full validation must never panic on arbitrary bytes; a valid
// config must survive a serialize/re-validate round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(cfg) = RunConfig::parse_json(data) else {
        return;
    };
    let Ok(validated) = cfg.validate() else {
        return;
    };
    let _ = validated.n;
    let reserialized = serde_json::to_vec(&cfg).expect("valid config serializes");
    let round = RunConfig::parse_json(&reserialized).expect("round trip parses");
    round.validate().expect("round trip validates");
});
