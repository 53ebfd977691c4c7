//! The code `C(H, f)` of length `N = q·n + 1`.
//!
//! Layout: coordinate `idx(α)·n + j` holds entry `j` of block `v_α`, where
//! `idx(α)` is the canonical index of `α`; coordinate `N - 1` holds the check
//! digit. A word is a codeword iff the block sum `c = Σ_α v_α` lies in `H`
//! and the check digit equals `Σ_α α·|v_α| + f(c)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linear_code::LinearCode;
use crate::perfect::{verify_perfect, PerfectnessReport, VerifyMode};
use crate::quadratic::QuadraticForm;
use crate::word::{self, Word};
use crate::Limits;

#[derive(Debug, Clone)]
pub struct VsCode {
    field: FieldSpec,
    base: LinearCode,
    f: QuadraticForm,
}

impl VsCode {
    pub fn new(base: LinearCode, f: QuadraticForm) -> Result<Self> {
        if base.field() != f.field() {
            return Err(Error::Usage("base code and switching function use different fields".into()));
        }
        if base.len() != f.num_vars() {
            return Err(Error::Usage(format!(
                "base code has length {} but the switching function has {} variables",
                base.len(),
                f.num_vars()
            )));
        }
        Ok(VsCode { field: base.field().clone(), base, f })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn base(&self) -> &LinearCode {
        &self.base
    }

    pub fn switching_function(&self) -> &QuadraticForm {
        &self.f
    }

    /// Base length `n`.
    pub fn block_len(&self) -> usize {
        self.base.len()
    }

    /// Code length `N = q·n + 1`.
    pub fn len(&self) -> usize {
        self.field.order() * self.base.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `q^{n(q-1)} · q^m`.
    pub fn size(&self) -> BigUint {
        let q = self.field.order();
        BigUint::from(q).pow((self.base.len() * (q - 1) + self.base.dimension()) as u32)
    }

    pub fn size_u64(&self) -> Option<u64> {
        let q = self.field.order();
        word::space_size(q, self.base.len() * (q - 1) + self.base.dimension())
    }

    /// Coordinate holding entry `j` (0-based) of the block indexed by `alpha`.
    pub fn coordinate(&self, alpha: FieldElement, j: usize) -> usize {
        alpha.index() * self.base.len() + j
    }

    pub fn check_position(&self) -> usize {
        self.len() - 1
    }

    /// `Σ_α v_α`.
    pub fn block_sum(&self, w: &Word) -> Result<Word> {
        w.check_len(self.len())?;
        Ok(Word::new(self.block_sum_slice(w.entries())))
    }

    pub(crate) fn block_sum_slice(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.base.len();
        let f = &self.field;
        let mut c = w[..n].to_vec();
        if n == 0 {
            return c;
        }
        for block in w[n..self.len() - 1].chunks_exact(n) {
            for (ci, &x) in c.iter_mut().zip(block) {
                *ci = f.add(*ci, x);
            }
        }
        c
    }

    /// `Σ_α α·|v_α|`, the part of the check digit that does not depend on f.
    fn weighted_block_sum(&self, w: &[FieldElement]) -> FieldElement {
        self.weighted_block_sum_prefix(&w[..self.len() - 1])
    }

    /// Check digit `Σ_α α·|v_α| + f(c)` for the blocks of `w` (the current
    /// last coordinate is ignored).
    pub fn check_digit(&self, w: &Word) -> Result<FieldElement> {
        w.check_len(self.len())?;
        let c = self.block_sum_slice(w.entries());
        Ok(self.field.add(self.weighted_block_sum(w.entries()), self.f.eval_slice(&c)))
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        w.check_len(self.len())?;
        Ok(self.contains_slice(w.entries()))
    }

    #[inline]
    pub(crate) fn contains_slice(&self, w: &[FieldElement]) -> bool {
        let c = self.block_sum_slice(w);
        self.base.contains_slice(&c)
            && w[self.len() - 1] == self.field.add(self.weighted_block_sum(w), self.f.eval_slice(&c))
    }

    /// Assembles the codeword with free blocks `v_α` (α ≠ 0, concatenated in
    /// canonical order) and block sum `h ∈ H`; `v_0` is determined.
    pub(crate) fn assemble(&self, free: &[FieldElement], h: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.base.len();
        let f = &self.field;
        let mut w = Vec::with_capacity(self.len());
        w.extend_from_slice(h);
        for block in free.chunks_exact(n.max(1)) {
            for (x, &y) in w.iter_mut().zip(block) {
                *x = f.sub(*x, y);
            }
        }
        w.extend_from_slice(free);
        let check = f.add(self.weighted_block_sum_prefix(&w), self.f.eval_slice(h));
        w.push(check);
        w
    }

    fn weighted_block_sum_prefix(&self, blocks: &[FieldElement]) -> FieldElement {
        let n = self.base.len();
        let f = &self.field;
        if n == 0 {
            return FieldElement::ZERO;
        }
        blocks.chunks_exact(n).enumerate().skip(1).fold(FieldElement::ZERO, |acc, (a, block)| {
            f.add(acc, f.mul(FieldElement::from_index(a as u8), f.sum(block.iter().copied())))
        })
    }

    /// Every codeword exactly once: outer loop over the free blocks in
    /// lexicographic order, inner loop over `H` in its enumeration order.
    pub fn enumerate(&self, limits: &Limits) -> Result<VsCodewords<'_>> {
        let total = self
            .size_u64()
            .filter(|&s| s <= limits.enumeration)
            .ok_or_else(|| Error::resource("codeword enumeration", self.size(), limits.enumeration))?;
        let base: Vec<Vec<FieldElement>> = self.base.enumerate(limits)?.map(Word::into_entries).collect();
        let q = self.field.order();
        Ok(VsCodewords {
            code: self,
            free: vec![FieldElement::ZERO; self.base.len() * (q - 1)],
            base,
            h: 0,
            remaining: total,
        })
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: Rng>(&self, rng: &mut R) -> Word {
        let q = self.field.order();
        let mut el = || FieldElement::from_index(rng.gen_range(0..q) as u8);
        let free: Vec<FieldElement> = (0..self.base.len() * (q - 1)).map(|_| el()).collect();
        let msg: Vec<FieldElement> = (0..self.base.dimension()).map(|_| el()).collect();
        let h = self.base.encode_slice(&msg);
        Word::new(self.assemble(&free, &h))
    }

    /// The code obtained by replacing the switching function.
    pub fn with_function(&self, f: QuadraticForm) -> Result<Self> {
        Self::new(self.base.clone(), f)
    }

    /// Ball-count sweep of the whole code.
    pub fn verify_perfect(&self, mode: VerifyMode, limits: &Limits) -> Result<PerfectnessReport> {
        verify_perfect(&self.field, self.len(), |w| self.contains_slice(w), mode, limits)
    }

    /// Set equality, decided as equal base row spaces plus agreement of the
    /// two switching functions on every element of the base.
    pub fn same_code(&self, other: &VsCode, limits: &Limits) -> Result<bool> {
        if self.field != other.field || self.len() != other.len() {
            return Err(Error::Usage("codes differ in field or length".into()));
        }
        if self.base != other.base {
            return Ok(false);
        }
        for h in self.base.enumerate(limits)? {
            if self.f.eval_slice(h.entries()) != other.f.eval_slice(h.entries()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub struct VsCodewords<'a> {
    code: &'a VsCode,
    free: Vec<FieldElement>,
    base: Vec<Vec<FieldElement>>,
    h: usize,
    remaining: u64,
}

impl Iterator for VsCodewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let w = self.code.assemble(&self.free, &self.base[self.h]);
        self.h += 1;
        if self.h == self.base.len() {
            self.h = 0;
            word::increment(self.code.field.order(), &mut self.free);
        }
        Some(Word::new(w))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for VsCodewords<'_> {}

/// Recovers the graph of `f` from a set of words of some `C(base, f)`:
/// `c = Σ_α v_α ↦ w_{N-1} - Σ_α α·|v_α|`.
pub fn reconstruct_f<'a, I>(words: I, base: &LinearCode) -> Result<BTreeMap<Word, FieldElement>>
where
    I: IntoIterator<Item = &'a Word>,
{
    let field = base.field();
    let n = base.len();
    let len = field.order() * n + 1;
    let probe = VsCode::new(base.clone(), QuadraticForm::zero(field, n))?;
    let mut table = BTreeMap::new();
    for w in words {
        if w.len() != len {
            return Err(Error::Inconsistent(format!("word {w} has length {}, expected {len}", w.len())));
        }
        let c = Word::new(probe.block_sum_slice(w.entries()));
        if !base.contains_slice(c.entries()) {
            return Err(Error::Inconsistent(format!("word {w} has block sum {c} outside the base code")));
        }
        let value = field.sub(w.entries()[len - 1], probe.weighted_block_sum(w.entries()));
        if let Some(&prev) = table.get(&c) {
            if prev != value {
                return Err(Error::Inconsistent(format!(
                    "block sum {c} is assigned both {prev} and {value} (at word {w})"
                )));
            }
        } else {
            table.insert(c, value);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr;
    use std::collections::BTreeSet;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    /// q = 2, H = F², f = x1·x2.
    fn example_code() -> VsCode {
        let f = gf2();
        VsCode::new(LinearCode::full_space(&f, 2), expr::parse(&f, 2, "x1*x2").unwrap()).unwrap()
    }

    fn repetition_base_code(fexpr: &str) -> VsCode {
        let f = gf2();
        let h = LinearCode::hamming(&f, 2, &Limits::default()).unwrap();
        VsCode::new(h, expr::parse(&f, 3, fexpr).unwrap()).unwrap()
    }

    fn word_set(c: &VsCode) -> BTreeSet<String> {
        c.enumerate(&Limits::default()).unwrap().map(|w| w.to_string()).collect()
    }

    #[test]
    fn membership_examples() {
        let c = example_code();
        let w = |s| Word::parse(c.field(), s).unwrap();
        assert!(c.contains(&w("11001")).unwrap());
        assert!(c.contains(&w("00011")).unwrap());
        assert!(!c.contains(&w("11000")).unwrap());
        assert!(c.contains(&w("1100")).is_err());
        assert_eq!(c.check_digit(&w("11000")).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn enumeration_examples() {
        let c = example_code();
        let ws = word_set(&c);
        assert_eq!(ws.len(), 16);
        for listed in ["00000", "11001", "11110", "00111", "10000", "00011", "01110", "11101"] {
            assert!(ws.contains(listed), "{listed}");
        }
        let l = Limits::default();
        assert!(c.enumerate(&l).unwrap().all(|w| c.contains(&w).unwrap()));
        assert_eq!(c.enumerate(&l).unwrap().next().unwrap(), Word::zero(5));

        let hamming7 = word_set(&repetition_base_code("0"));
        assert_eq!(hamming7.len(), 16);
        let f = gf2();
        let h7 = LinearCode::hamming(&f, 3, &l).unwrap();
        let ours: Vec<Word> = hamming7.iter().map(|s| Word::parse(&f, s).unwrap()).collect();
        let theirs: Vec<Word> = h7.enumerate(&l).unwrap().collect();
        // same code up to a Hamming-graph automorphism; here a coordinate permutation
        let eq = crate::equivalence::exact_equivalence(&ours, &theirs, &f, 7, &l).unwrap().unwrap();
        assert!(eq.alphabet.iter().all(|psi| psi == &[0, 1]));
    }

    #[test]
    fn sizes() {
        assert_eq!(example_code().size(), BigUint::from(16u32));
        assert_eq!(repetition_base_code("0").size(), BigUint::from(16u32));
        let f3 = FieldSpec::prime(3).unwrap();
        let h = LinearCode::hamming(&f3, 2, &Limits::default()).unwrap();
        let c = VsCode::new(h, QuadraticForm::zero(&f3, 4)).unwrap();
        assert_eq!(c.size_u64(), Some(59049));
        assert_eq!(c.len(), 13);
    }

    #[test]
    fn enumeration_count_matches_size_for_assorted_codes() {
        let l = Limits::default();
        for q in [2, 3, 4] {
            let f = FieldSpec::with_order(q).unwrap();
            for (base, seed) in [(LinearCode::zero_code(&f, 1), 1), (LinearCode::full_space(&f, 1), 2)] {
                let g = QuadraticForm::random(&f, 1, seed, false);
                let c = VsCode::new(base, g).unwrap();
                let all: BTreeSet<Word> = c.enumerate(&l).unwrap().collect();
                assert_eq!(all.len() as u64, c.size_u64().unwrap());
                assert!(all.iter().all(|w| c.contains(w).unwrap()));
            }
        }
    }

    #[test]
    fn random_codewords_are_members() {
        use rand::SeedableRng;
        let f3 = FieldSpec::prime(3).unwrap();
        let h = LinearCode::hamming(&f3, 2, &Limits::default()).unwrap();
        let c = VsCode::new(h, QuadraticForm::random(&f3, 4, 3, true)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert!(c.contains(&c.random_codeword(&mut rng)).unwrap());
        }
    }

    #[test]
    fn reconstruct_examples() {
        let l = Limits::default();
        let c = example_code();
        let words: Vec<Word> = c.enumerate(&l).unwrap().collect();
        let t = reconstruct_f(&words, c.base()).unwrap();
        let rendered: Vec<(String, usize)> = t.iter().map(|(k, v)| (k.to_string(), v.index())).collect();
        assert_eq!(
            rendered,
            [("00".into(), 0), ("01".into(), 0), ("10".into(), 0), ("11".into(), 1)]
        );

        let z = repetition_base_code("0");
        let zw: Vec<Word> = z.enumerate(&l).unwrap().collect();
        let zt = reconstruct_f(&zw, z.base()).unwrap();
        assert_eq!(zt.len(), 2);
        assert!(zt.values().all(|v| v.is_zero()));
    }

    #[test]
    fn reconstruct_detects_inconsistency() {
        let l = Limits::default();
        let c = example_code();
        let mut words: Vec<Word> = c.enumerate(&l).unwrap().collect();
        // flip the check digit of one word: conflicting value for its block sum
        let last = words[3].len() - 1;
        let e = &mut words[3].entries_mut()[last];
        *e = c.field().add(*e, FieldElement::ONE);
        assert!(matches!(reconstruct_f(&words, c.base()), Err(Error::Inconsistent(_))));

        let r = repetition_base_code("0");
        let mut rw: Vec<Word> = r.enumerate(&l).unwrap().collect();
        rw[5].entries_mut()[0] = c.field().add(rw[5].entries()[0], FieldElement::ONE);
        assert!(matches!(reconstruct_f(&rw, r.base()), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn all_quadratics_on_f2_give_distinct_codes() {
        let l = Limits::default();
        let f = gf2();
        let base = LinearCode::full_space(&f, 2);
        let codes: Vec<BTreeSet<String>> = crate::quadratic::enumerate_quadratics(&f, 2, false, &l)
            .unwrap()
            .map(|g| word_set(&VsCode::new(base.clone(), g).unwrap()))
            .collect();
        let distinct: BTreeSet<_> = codes.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn same_code_examples() {
        let l = Limits::default();
        assert!(repetition_base_code("0").same_code(&repetition_base_code("x1*x2 + x1*x3"), &l).unwrap());
        assert_eq!(word_set(&repetition_base_code("0")), word_set(&repetition_base_code("x1*x2 + x1*x3")));
        let f = gf2();
        let zero = VsCode::new(LinearCode::full_space(&f, 2), QuadraticForm::zero(&f, 2)).unwrap();
        assert!(!example_code().same_code(&zero, &l).unwrap());
        assert!(example_code().same_code(&example_code(), &l).unwrap());
        assert!(example_code().same_code(&repetition_base_code("0"), &l).is_err());
    }

    #[test]
    fn perfectness_examples() {
        let l = Limits::default();
        let r = repetition_base_code("x1*x2 + x1*x3").verify_perfect(VerifyMode::Exhaustive, &l).unwrap();
        assert!(r.verdict);
        assert_eq!(r.words_checked, 128);
        let bad = example_code().verify_perfect(VerifyMode::Exhaustive, &l).unwrap();
        assert!(!bad.verdict);
        assert!(!bad.violations.is_empty());
    }

    #[test]
    fn affine_switching_function_gives_additive_code() {
        let l = Limits::default();
        let f3 = FieldSpec::prime(3).unwrap();
        let base = LinearCode::full_space(&f3, 1);
        let c = VsCode::new(base, expr::parse(&f3, 1, "2*x1").unwrap()).unwrap();
        let all: Vec<Word> = c.enumerate(&l).unwrap().collect();
        for a in &all {
            for b in &all {
                assert!(c.contains(&a.add(&f3, b).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn sphere_packing_consistency() {
        let l = Limits::default();
        for q in [2u32, 3] {
            let f = FieldSpec::with_order(q).unwrap();
            let h = LinearCode::hamming(&f, 2, &l).unwrap();
            let n = h.len();
            let c = VsCode::new(h, QuadraticForm::random(&f, n, 11, true)).unwrap();
            let big_n = c.len() as u32;
            let q = q as u64;
            assert_eq!((1 + big_n as u64 * (q - 1)) * c.size_u64().unwrap(), q.pow(big_n));
        }
    }
}
