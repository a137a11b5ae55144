#![no_main]

use conley_cli::Problem;
use libfuzzer_sys::fuzz_target;

// Anything that parses must serialize to text that parses back to the same problem.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = Problem::parse(text) else { return };
    let once = p.serialize();
    let q = Problem::parse(&once).expect("serialized problem must reparse");
    assert_eq!(once, q.serialize());
    assert_eq!(p.maps.len(), q.maps.len());
    for ((a, f), (b, g)) in p.maps.iter().zip(&q.maps) {
        assert_eq!(a, b);
        assert_eq!(f, g);
    }
    assert_eq!(p.sets, q.sets);
});
