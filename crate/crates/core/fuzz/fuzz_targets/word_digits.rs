#![no_main]

use libfuzzer_sys::fuzz_target;
use propel::{FieldSpec, Word};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let field = FieldSpec::with_order(ORDERS[q as usize % ORDERS.len()]).unwrap();
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = Word::parse(&field, text) {
        assert_eq!(w.to_digits(&field), text);
    }
});
