#![no_main]

use libfuzzer_sys::fuzz_target;
use onlinecover::instance::{parse_instance, serialize_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(stream) = parse_instance(text) {
        let again = parse_instance(&serialize_instance(&stream)).expect("serialized stream re-parses");
        assert_eq!(again.events, stream.events);
    }
});
