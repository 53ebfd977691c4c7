//! Linear base codes `H ⊆ F^n`.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{self, Matrix};
use crate::perfect::{verify_perfect, VerifyMode};
use crate::word::{self, Word};
use crate::Limits;

/// A linear code given by a full-rank generator matrix (rows span the code)
/// and a full-rank parity-check matrix (rows span its dual).
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    generator: Matrix,
    parity_check: Matrix,
}

impl PartialEq for LinearCode {
    /// Row-space equality.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && matrix::rref(&self.field, &self.generator, self.n).0
                == matrix::rref(&other.field, &other.generator, other.n).0
    }
}

impl Eq for LinearCode {}

fn check_matrix(field: &FieldSpec, n: usize, rows: &[Vec<FieldElement>]) -> Result<()> {
    for row in rows {
        if row.len() != n {
            return Err(Error::Usage(format!("matrix row has length {}, expected {n}", row.len())));
        }
        if let Some(e) = row.iter().find(|e| e.index() >= field.order()) {
            return Err(Error::Usage(format!("{e} is not an element of GF({})", field.order())));
        }
    }
    Ok(())
}

impl LinearCode {
    /// The code spanned by `generator`, whose rows must be independent.
    pub fn from_generator(field: &FieldSpec, n: usize, generator: Vec<Vec<FieldElement>>) -> Result<Self> {
        check_matrix(field, n, &generator)?;
        if matrix::rank(field, &generator, n) != generator.len() {
            return Err(Error::Usage("generator rows are linearly dependent".into()));
        }
        let parity_check = matrix::nullspace(field, &generator, n);
        Ok(LinearCode { field: field.clone(), n, generator, parity_check })
    }

    /// The code `{w : parity_check · wᵀ = 0}`; rows must be independent.
    pub fn from_parity_check(field: &FieldSpec, n: usize, parity_check: Vec<Vec<FieldElement>>) -> Result<Self> {
        check_matrix(field, n, &parity_check)?;
        if matrix::rank(field, &parity_check, n) != parity_check.len() {
            return Err(Error::Usage("parity-check rows are linearly dependent".into()));
        }
        let generator = matrix::nullspace(field, &parity_check, n);
        Ok(LinearCode { field: field.clone(), n, generator, parity_check })
    }

    /// The whole space `F^n`.
    pub fn full_space(field: &FieldSpec, n: usize) -> Self {
        let generator = (0..n)
            .map(|i| (0..n).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }).collect())
            .collect();
        LinearCode { field: field.clone(), n, generator, parity_check: Vec::new() }
    }

    /// The zero-dimensional code `{0} ⊂ F^n`.
    pub fn zero_code(field: &FieldSpec, n: usize) -> Self {
        let mut c = Self::full_space(field, n);
        std::mem::swap(&mut c.generator, &mut c.parity_check);
        c
    }

    /// The q-ary Hamming code with `r` check symbols. The parity-check
    /// columns are the nonzero vectors of `F^r` whose first nonzero entry is
    /// 1, in lexicographic order.
    pub fn hamming(field: &FieldSpec, r: usize, limits: &Limits) -> Result<Self> {
        if r < 2 {
            return Err(Error::Usage(format!("Hamming codes need r >= 2, got {r}")));
        }
        let q = field.order();
        let total = word::space_size(q, r)
            .filter(|&t| (t - 1) / (q as u64 - 1) <= limits.max_length as u64)
            .ok_or_else(|| Error::resource("Hamming code length", format!("({q}^{r}-1)/({q}-1)"), limits.max_length))?;
        let mut columns = Vec::new();
        let mut v = vec![FieldElement::ZERO; r];
        for _ in 0..total {
            if v.iter().find(|e| !e.is_zero()) == Some(&FieldElement::ONE) {
                columns.push(v.clone());
            }
            word::increment(q, &mut v);
        }
        let n = columns.len();
        let h: Matrix = (0..r).map(|i| columns.iter().map(|col| col[i]).collect()).collect();
        Self::from_parity_check(field, n, h)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    pub fn parity_check(&self) -> &[Vec<FieldElement>] {
        &self.parity_check
    }

    /// `q^m`, if it fits.
    pub fn size(&self) -> Option<u64> {
        word::space_size(self.field.order(), self.dimension())
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        w.check_len(self.n)?;
        Ok(self.contains_slice(w.entries()))
    }

    #[inline]
    pub(crate) fn contains_slice(&self, w: &[FieldElement]) -> bool {
        let f = &self.field;
        self.parity_check
            .iter()
            .all(|row| row.iter().zip(w).fold(FieldElement::ZERO, |acc, (&h, &x)| f.add(acc, f.mul(h, x))).is_zero())
    }

    pub fn syndrome(&self, w: &Word) -> Result<Word> {
        w.check_len(self.n)?;
        let f = &self.field;
        Ok(Word::new(
            self.parity_check
                .iter()
                .map(|row| f.sum(row.iter().zip(w.entries()).map(|(&h, &x)| f.mul(h, x))))
                .collect(),
        ))
    }

    /// `message · generator`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Word> {
        if message.len() != self.dimension() {
            return Err(Error::Usage(format!(
                "message has length {}, expected {}",
                message.len(),
                self.dimension()
            )));
        }
        Ok(Word::new(self.encode_slice(message)))
    }

    pub(crate) fn encode_slice(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.n];
        for (&m, row) in message.iter().zip(&self.generator) {
            if !m.is_zero() {
                for (o, &g) in out.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(m, g));
                }
            }
        }
        out
    }

    /// All codewords, one per message vector, messages in lexicographic order.
    pub fn enumerate(&self, limits: &Limits) -> Result<Codewords<'_>> {
        let count = self
            .size()
            .filter(|&s| s <= limits.enumeration)
            .ok_or_else(|| self.too_large(limits))?;
        Ok(Codewords { code: self, message: vec![FieldElement::ZERO; self.dimension()], remaining: count })
    }

    fn too_large(&self, limits: &Limits) -> Error {
        Error::resource(
            "codeword enumeration",
            format!("{}^{}", self.field.order(), self.dimension()),
            limits.enumeration,
        )
    }

    /// Exhaustive check that every word of `F^n` is within distance 1 of
    /// exactly one codeword.
    pub fn is_one_perfect(&self, limits: &Limits) -> Result<bool> {
        let report = verify_perfect(&self.field, self.n, |w| self.contains_slice(w), VerifyMode::Exhaustive, limits)?;
        Ok(report.verdict)
    }
}

pub struct Codewords<'a> {
    code: &'a LinearCode,
    message: Vec<FieldElement>,
    remaining: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let w = self.code.encode_slice(&self.message);
        word::increment(self.code.field.order(), &mut self.message);
        Some(Word::new(w))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Codewords<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn words(code: &LinearCode) -> Vec<String> {
        code.enumerate(&Limits::default()).unwrap().map(|w| w.to_string()).collect()
    }

    #[test]
    fn binary_hamming_r2_is_repetition_code() {
        let f = FieldSpec::prime(2).unwrap();
        let h = LinearCode::hamming(&f, 2, &Limits::default()).unwrap();
        assert_eq!(h.len(), 3);
        let rows: Vec<String> = h.parity_check().iter().map(|r| Word::new(r.clone()).to_string()).collect();
        assert_eq!(rows, ["011", "101"]);
        let mut w = words(&h);
        w.sort();
        assert_eq!(w, ["000", "111"]);
        assert!(h.contains(&Word::parse(&f, "111").unwrap()).unwrap());
        assert!(!h.contains(&Word::parse(&f, "110").unwrap()).unwrap());
        assert!(h.contains(&Word::zero(3)).unwrap());
        assert!(h.contains(&Word::zero(4)).is_err());
    }

    #[test]
    fn hamming_sizes() {
        let l = Limits::default();
        let f2 = FieldSpec::prime(2).unwrap();
        let h = LinearCode::hamming(&f2, 3, &l).unwrap();
        assert_eq!((h.len(), h.size()), (7, Some(16)));
        let f3 = FieldSpec::prime(3).unwrap();
        let h3 = LinearCode::hamming(&f3, 2, &l).unwrap();
        assert_eq!((h3.len(), h3.size()), (4, Some(9)));
        let ws = words(&h3);
        assert_eq!(ws.iter().collect::<HashSet<_>>().len(), 9);
        assert!(LinearCode::hamming(&f2, 1, &l).is_err());
        let tight = Limits { max_length: 6, ..l };
        assert!(matches!(LinearCode::hamming(&f2, 3, &tight), Err(Error::Resource { .. })));
    }

    #[test]
    fn zero_dimensional_code() {
        let f = FieldSpec::prime(3).unwrap();
        let z = LinearCode::zero_code(&f, 3);
        assert_eq!(words(&z), ["000"]);
    }

    #[test]
    fn enumeration_ceiling() {
        let f = FieldSpec::prime(2).unwrap();
        let c = LinearCode::full_space(&f, 10);
        let l = Limits { enumeration: 1000, ..Limits::default() };
        assert!(matches!(c.enumerate(&l), Err(Error::Resource { .. })));
        assert!(matches!(c.is_one_perfect(&l), Err(Error::Resource { .. })));
    }

    #[test]
    fn perfectness() {
        let l = Limits::default();
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(LinearCode::hamming(&f2, 3, &l).unwrap().is_one_perfect(&l).unwrap());
        assert!(!LinearCode::full_space(&f2, 3).is_one_perfect(&l).unwrap());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(LinearCode::hamming(&f3, 2, &l).unwrap().is_one_perfect(&l).unwrap());
        let f4 = FieldSpec::with_order(4).unwrap();
        assert!(LinearCode::hamming(&f4, 2, &l).unwrap().is_one_perfect(&l).unwrap());
    }

    #[test]
    fn hamming_sphere_packing_identity_and_closure() {
        let l = Limits::default();
        for (q, r) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2), (7, 2), (8, 2), (9, 2)] {
            let f = FieldSpec::with_order(q).unwrap();
            let h = LinearCode::hamming(&f, r, &l).unwrap();
            let n = h.len() as u32;
            let q = q as u64;
            assert_eq!(h.dimension(), h.len() - r);
            assert_eq!((1 + n as u64 * (q - 1)) * q.pow(n - r as u32), q.pow(n));
            for row in h.generator() {
                for prow in h.parity_check() {
                    assert!(f.sum(row.iter().zip(prow).map(|(&a, &b)| f.mul(a, b))).is_zero());
                }
            }
            if h.size().unwrap() <= 256 {
                let all: Vec<Word> = h.enumerate(&l).unwrap().collect();
                for a in &all {
                    assert!(h.contains(a).unwrap());
                    for b in &all {
                        assert!(h.contains(&a.add(&f, b).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn row_space_equality_ignores_basis_choice() {
        let f = FieldSpec::prime(2).unwrap();
        let e = |s: &str| Word::parse(&f, s).unwrap().into_entries();
        let a = LinearCode::from_generator(&f, 3, vec![e("110"), e("011")]).unwrap();
        let b = LinearCode::from_generator(&f, 3, vec![e("101"), e("110")]).unwrap();
        let c = LinearCode::from_generator(&f, 3, vec![e("100"), e("010")]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(LinearCode::from_generator(&f, 3, vec![e("110"), e("110")]).is_err());
    }
}
