#![no_main]

use conley_cli::commands::{cmd_homology, parse_coeff};
use conley_cli::Problem;
use libfuzzer_sys::fuzz_target;

const ROTATION: &str = include_str!("../../fixtures/rotation.cmap");

// Coefficient, set and pair arguments as typed on the command line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut parts = text.splitn(3, '\n');
    let coeff = parts.next().unwrap_or("");
    let set = parts.next().unwrap_or("");
    let pair = parts.next().unwrap_or("");
    let Ok(ring) = parse_coeff(coeff) else { return };
    let problem = Problem::parse(ROTATION).unwrap();
    let _ = cmd_homology(&problem, Some(set), None, ring);
    let _ = cmd_homology(&problem, None, Some(pair), ring);
});
