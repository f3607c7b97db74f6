#![no_main]

use fourbody::rational::{parse_rat, rat_string};
use libfuzzer_sys::fuzz_target;

// The "p/q" parser must never panic, and printing must round-trip exactly.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = parse_rat(text) else {
        return;
    };
    let printed = rat_string(&value);
    let reparsed = parse_rat(&printed).expect("printed form parses");
    assert_eq!(reparsed, value);
});
