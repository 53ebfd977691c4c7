#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::{expr, FieldSpec};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fuzz_target!(|data: &[u8]| {
    let [q, n, rest @ ..] = data else { return };
    let field = FieldSpec::with_order(ORDERS[*q as usize % ORDERS.len()]).unwrap();
    let n = *n as usize % 12;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(g) = expr::parse(&field, n, text) {
        assert_eq!(expr::parse(&field, n, &expr::render(&g)).unwrap(), g);
    }
});
