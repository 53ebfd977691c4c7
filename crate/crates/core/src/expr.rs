//! Text syntax for quadratic forms: a `+`-separated sum of terms `c`,
//! `c*xI`, `c*xI*xJ`, `xI`, or `xI*xJ`, with 1-based variable indices and a
//! single-digit coefficient. Whitespace is ignored, repeated monomials
//! accumulate, and `0` alone denotes the zero form.
//!
//! ```
//! use propel::{expr, FieldSpec};
//! let f = FieldSpec::prime(2).unwrap();
//! let g = expr::parse(&f, 3, "x1*x2 + x1*x3").unwrap();
//! assert_eq!(expr::render(&g), "x1*x2 + x1*x3");
//! ```

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::quadratic::QuadraticForm;

fn parse_var(field: &FieldSpec, tok: &str, n: usize) -> Result<usize> {
    let digits = tok
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("expected a variable like x1, found {tok:?}")))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 6 {
        return Err(Error::Parse(format!("bad variable {tok:?}")));
    }
    let i: usize = digits.parse().map_err(|_| Error::Parse(format!("bad variable {tok:?}")))?;
    if i == 0 || i > n {
        return Err(Error::Parse(format!(
            "variable {tok} out of range x1..x{n} over GF({})",
            field.order()
        )));
    }
    Ok(i - 1)
}

/// Parses an expression in `n` variables over `field`.
pub fn parse(field: &FieldSpec, n: usize, text: &str) -> Result<QuadraticForm> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut g = QuadraticForm::zero(field, n);
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let mut factors = term.split('*').peekable();
        let first = *factors.peek().expect("split yields at least one item");
        let coeff = if first.starts_with('x') {
            FieldElement::ONE
        } else {
            factors.next();
            let mut chars = first.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => field.from_digit(c)?,
                _ => return Err(Error::Parse(format!("coefficient {first:?} is not a single digit"))),
            }
        };
        let vars = factors.map(|t| parse_var(field, t, n)).collect::<Result<Vec<_>>>()?;
        match vars.as_slice() {
            [] => g.add_constant(coeff)?,
            [i] => g.add_linear(*i, coeff)?,
            [i, j] => g.add_quadratic(*i, *j, coeff)?,
            _ => return Err(Error::Parse(format!("term {term:?} has degree above 2"))),
        }
    }
    Ok(g)
}

/// Canonical text form: quadratic terms in index order, then linear terms,
/// then the constant; coefficient 1 is omitted. [`parse`] inverts it.
pub fn render(g: &QuadraticForm) -> String {
    let f = g.field();
    let coeff = |a: FieldElement| {
        if a == FieldElement::ONE {
            String::new()
        } else {
            format!("{}*", f.to_digit(a))
        }
    };
    let mut terms = Vec::new();
    for (&(i, j), &a) in g.quadratic() {
        terms.push(format!("{}x{}*x{}", coeff(a), i + 1, j + 1));
    }
    for (i, &b) in g.linear().iter().enumerate() {
        if !b.is_zero() {
            terms.push(format!("{}x{}", coeff(b), i + 1));
        }
    }
    if !g.constant().is_zero() {
        terms.push(f.to_digit(g.constant()).to_string());
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_sums_of_products() {
        let f = FieldSpec::prime(2).unwrap();
        let g = parse(&f, 2, "x1*x2").unwrap();
        assert_eq!(g.quadratic().len(), 1);
        let h = parse(&f, 3, " x1 * x2+x1*x3 ").unwrap();
        assert_eq!(render(&h), "x1*x2 + x1*x3");
        assert_eq!(parse(&f, 3, "0").unwrap(), QuadraticForm::zero(&f, 3));
        assert_eq!(parse(&f, 3, "x1*x2 + x1*x2").unwrap(), QuadraticForm::zero(&f, 3));
    }

    #[test]
    fn coefficients_and_constants() {
        let f = FieldSpec::prime(3).unwrap();
        let g = parse(&f, 2, "2*x1*x1 + 2*x2 + 1").unwrap();
        assert_eq!(render(&g), "2*x1*x1 + 2*x2 + 1");
        assert_eq!(g.constant(), FieldElement::ONE);
    }

    #[test]
    fn rejects_malformed() {
        let f = FieldSpec::prime(3).unwrap();
        for bad in ["", "x0", "x4", "3*x1", "x1*x2*x3", "x1++x2", "12*x1", "y1", "x", "2*", "x1*", "x-1"] {
            assert!(parse(&f, 3, bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(q in prop::sample::select(vec![2u32, 3, 4, 9]), n in 0usize..5, seed: u64) {
            let f = FieldSpec::with_order(q).unwrap();
            let g = QuadraticForm::random(&f, n, seed, false);
            prop_assert_eq!(parse(&f, n, &render(&g)).unwrap(), g);
        }
    }
}
