#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::format::{parse_field, FieldJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_field(text) {
        let again = serde_json::to_string(&FieldJson::from_field(&f)).unwrap();
        assert_eq!(parse_field(&again).unwrap(), f);
    }
});
