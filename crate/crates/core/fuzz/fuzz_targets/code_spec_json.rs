#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::format::{code_spec_to_json, parse_code_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(code) = parse_code_spec(text) {
        let back = parse_code_spec(&code_spec_to_json(&code).to_string()).unwrap();
        assert_eq!(back.switching_function(), code.switching_function());
        assert_eq!(back.base(), code.base());
    }
});
