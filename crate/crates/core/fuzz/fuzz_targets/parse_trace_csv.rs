#![no_main]

use libfuzzer_sys::fuzz_target;
use onlinecover::engine::{parse_trace_csv, write_trace_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(parsed) = parse_trace_csv(text) {
        let clean = parsed
            .summary
            .iter()
            .all(|(k, v)| !k.contains([',', '=']) && !v.contains(','));
        if clean {
            let again = parse_trace_csv(&write_trace_csv(&parsed.rows, &parsed.summary)).unwrap();
            assert_eq!(again.rows.len(), parsed.rows.len());
        }
    }
});
