#![no_main]

use conley_cli::commands::{cmd_morse, cmd_validate};
use conley_cli::Problem;
use conley::field::CoefficientRing;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = Problem::parse(text) else { return };
    // Keep the order complex small.
    if p.space.len() > 10 {
        return;
    }
    let _ = cmd_validate(&p, None);
    for (name, f) in &p.maps {
        if f.is_admissible() {
            let _ = cmd_morse(&p, name, true, CoefficientRing::Rationals);
        }
    }
});
