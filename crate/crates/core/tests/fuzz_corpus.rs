//! Replays the checked-in fuzz seeds through the parsers they target.

use std::path::Path;

use propel::format::{parse_automorphism, parse_code_spec, parse_codewords, parse_field, parse_quadratic};
use propel::{expr, FieldSpec, Limits, Word};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn with_field(data: &[u8]) -> (FieldSpec, &str) {
    let (q, rest) = data.split_first().unwrap();
    (FieldSpec::with_order(ORDERS[*q as usize % ORDERS.len()]).unwrap(), std::str::from_utf8(rest).unwrap())
}

#[test]
fn field_seeds() {
    for (name, data) in seeds("field_json") {
        let r = parse_field(std::str::from_utf8(&data).unwrap());
        assert_eq!(r.is_ok(), name != "reducible", "{name}: {r:?}");
    }
}

#[test]
fn code_spec_seeds() {
    for (name, data) in seeds("code_spec_json") {
        let code = parse_code_spec(std::str::from_utf8(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(code.verify_perfect(propel::perfect::VerifyMode::Sampled { trials: 100, seed: 0 }, &Limits::default()).is_ok());
    }
}

#[test]
fn quadratic_seeds() {
    for (name, data) in seeds("quadratic_json") {
        let (field, text) = with_field(&data);
        parse_quadratic(&field, text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn automorphism_seeds() {
    for (name, data) in seeds("automorphism_json") {
        let (field, text) = with_field(&data);
        parse_automorphism(&field, text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn expression_seeds() {
    for (name, data) in seeds("f_expression") {
        let (field, rest) = with_field(&data);
        let n = rest.as_bytes()[0] as usize % 12;
        let g = expr::parse(&field, n, &rest[1..]).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(expr::parse(&field, n, &expr::render(&g)).unwrap(), g);
    }
}

#[test]
fn codeword_file_seeds() {
    for (name, data) in seeds("codeword_file") {
        let (field, text) = with_field(&data);
        assert!(!parse_codewords(&field, text, None).unwrap_or_else(|e| panic!("{name}: {e}")).is_empty());
    }
}

#[test]
fn word_seeds() {
    for (name, data) in seeds("word_digits") {
        let (field, text) = with_field(&data);
        let w = Word::parse(&field, text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(w.to_digits(&field), text);
    }
}
