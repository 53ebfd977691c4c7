#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::format::{parse_automorphism, AutomorphismJson};
use propel::FieldSpec;

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let field = FieldSpec::with_order(ORDERS[q as usize % ORDERS.len()]).unwrap();
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(a) = parse_automorphism(&field, text) {
        let inv = a.inverse(&field);
        assert!(a.compose(&field, &inv).is_identity());
        let again = serde_json::to_string(&AutomorphismJson::from_automorphism(&a)).unwrap();
        assert_eq!(parse_automorphism(&field, &again).unwrap(), a);
    }
});
