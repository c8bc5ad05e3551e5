#![no_main]

use libfuzzer_sys::fuzz_target;
use onlinecover::harness::{parse_budget, FSpec, GenSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = FSpec::parse(text);
    let _ = parse_budget(text);
    // Only build small instances so a run stays fast.
    if let Ok(spec) = GenSpec::parse(text) {
        let small = match &spec {
            GenSpec::Triangular(n) | GenSpec::TwoPhase(n) => *n <= 64,
            GenSpec::Complete(d, m) => d * m <= 4096,
            GenSpec::Random { n, .. } => *n <= 128,
            GenSpec::Ski(s) => s.intervals() <= 256 && s.states.len() <= 8,
        };
        if small {
            let _ = spec.build(0);
        }
    }
});
