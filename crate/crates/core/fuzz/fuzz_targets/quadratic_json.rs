#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::format::{parse_quadratic, QuadraticJson};
use propel::FieldSpec;

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let field = FieldSpec::with_order(ORDERS[q as usize % ORDERS.len()]).unwrap();
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(g) = parse_quadratic(&field, text) {
        let again = serde_json::to_string(&QuadraticJson::from_form(&g)).unwrap();
        assert_eq!(parse_quadratic(&field, &again).unwrap(), g);
    }
});
