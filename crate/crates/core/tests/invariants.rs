//! Cross-module invariants on small random codes.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use propel::format::{code_spec_to_json, parse_code_spec};
use propel::group::{build_group, fingerprint};
use propel::propelinear::{phi_w, pi_c, pi_j_beta, Automorphism};
use propel::vs_code::reconstruct_f;
use propel::{FieldElement, FieldSpec, Limits, LinearCode, QuadraticForm, VsCode, Word};

/// Base codes whose composed codes have at most 729 words.
fn base(kind: usize) -> LinearCode {
    let gf = |q| FieldSpec::with_order(q).unwrap();
    match kind {
        0 => LinearCode::full_space(&gf(2), 1),
        1 => LinearCode::full_space(&gf(2), 2),
        2 => LinearCode::full_space(&gf(2), 3),
        3 => LinearCode::hamming(&gf(2), 2, &Limits::default()).unwrap(),
        4 => LinearCode::zero_code(&gf(2), 3),
        5 => LinearCode::full_space(&gf(3), 1),
        6 => LinearCode::full_space(&gf(3), 2),
        7 => LinearCode::zero_code(&gf(3), 2),
        8 => LinearCode::full_space(&gf(4), 1),
        _ => LinearCode::zero_code(&gf(5), 1),
    }
}

fn small_code() -> impl Strategy<Value = VsCode> {
    (0usize..10, any::<u64>(), any::<bool>()).prop_map(|(kind, seed, zero_constant)| {
        let b = base(kind);
        let f = QuadraticForm::random(b.field(), b.len(), seed, zero_constant);
        VsCode::new(b, f).unwrap()
    })
}

fn propelinear_code() -> impl Strategy<Value = VsCode> {
    (0usize..10, any::<u64>()).prop_map(|(kind, seed)| {
        let b = base(kind);
        let f = QuadraticForm::random(b.field(), b.len(), seed, true);
        VsCode::new(b, f).unwrap()
    })
}

fn words(code: &VsCode) -> Vec<Word> {
    code.enumerate(&Limits::default()).unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_matches_size_and_membership(code in small_code()) {
        let ws = words(&code);
        prop_assert_eq!(Some(ws.len() as u64), code.size_u64());
        prop_assert_eq!(ws.iter().collect::<HashSet<_>>().len(), ws.len());
        for w in &ws {
            prop_assert!(code.contains(w).unwrap());
        }
    }

    #[test]
    fn switching_function_round_trips(code in small_code()) {
        let l = Limits::default();
        let table = reconstruct_f(&words(&code), code.base()).unwrap();
        prop_assert_eq!(table, code.switching_function().value_table(code.base(), &l).unwrap());
    }

    #[test]
    fn spec_json_round_trips(code in small_code()) {
        let back = parse_code_spec(&code_spec_to_json(&code).to_string()).unwrap();
        prop_assert_eq!(back.switching_function(), code.switching_function());
        prop_assert!(back.same_code(&code, &Limits::default()).unwrap());
    }

    #[test]
    fn conjugation_law(code in small_code(), j in 1usize..4, b in 0usize..5) {
        let f = code.field().clone();
        let j = 1 + (j - 1) % code.block_len();
        let beta = FieldElement::from_index((b % f.order()) as u8);
        let p = pi_j_beta(&code, j, beta).unwrap();
        let image: BTreeSet<Word> = words(&code).iter().map(|v| Word::new(p.apply(v.entries()))).collect();
        let target = code.with_function(code.switching_function().plus_linear(j - 1, beta).unwrap()).unwrap();
        prop_assert_eq!(image, words(&target).into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn phi_acts_regularly_with_bounded_orders(code in propelinear_code()) {
        let f = code.field().clone();
        let p = f.characteristic() as u64;
        let ws = words(&code);
        let zero = Word::zero(code.len());
        let mut seen = HashSet::new();
        for w in &ws {
            let phi = phi_w(&code, w).unwrap();
            prop_assert_eq!(&phi.apply(&f, &zero).unwrap(), w);
            prop_assert!(seen.insert(phi.clone()));
            prop_assert!([1, p, p * p].contains(&phi.order(&f)));
            let c = code.block_sum(w).unwrap();
            prop_assert_eq!(p % pi_c(&code, &c).unwrap().order(), 0);
        }
        prop_assert_eq!(phi_w(&code, &zero).unwrap(), Automorphism::identity(code.len()));
    }

    #[test]
    fn built_groups_satisfy_the_axioms(code in propelinear_code()) {
        let g = build_group(&code, &Limits::default()).unwrap();
        let t = &g.table;
        let n = t.order();
        let fp = fingerprint(t);
        let p = code.field().characteristic() as u64;
        for a in 0..n {
            prop_assert_eq!(t.mul(0, a), a);
            prop_assert_eq!(t.mul(a, t.inv(a)), 0);
            let o = t.element_order(a);
            prop_assert_eq!(fp.exponent % o, 0);
            prop_assert!([1, p, p * p].contains(&o));
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                    }
                }
            }
        }
        if code.switching_function().is_affine() {
            prop_assert!(fp.abelian);
            prop_assert_eq!(fp.exponent, if n == 1 { 1 } else { p });
        }
    }
}
