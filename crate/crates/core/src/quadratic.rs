//! Switching functions as ambient polynomials of degree at most 2.
//!
//! A form on `n` variables is `a₀ + Σ b_i x_i + Σ_{i≤j} a_ij x_i x_j`. It is
//! always carried as a polynomial on `F^n`, never as a value table on a
//! subspace: different polynomials with the same restriction to `H` have
//! different shift coefficients and therefore induce different propelinear
//! structures.
//!
//! Indices are 0-based in the API and 1-based in the text and JSON formats.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linear_code::LinearCode;
use crate::word::{self, Word};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: FieldSpec,
    n: usize,
    constant: FieldElement,
    linear: Vec<FieldElement>,
    /// Keys `(i, j)` with `i <= j`; zero coefficients are never stored. Over
    /// GF(2) the diagonal is always empty because `x_i² = x_i` there.
    quadratic: BTreeMap<(usize, usize), FieldElement>,
}

/// The shift data of a form under translation by `c`:
/// `f(x + c) = f(x) + constant + Σ linear_i x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Beta {
    pub constant: FieldElement,
    pub linear: Vec<FieldElement>,
}

impl QuadraticForm {
    /// The zero form on `n` variables.
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        QuadraticForm {
            field: field.clone(),
            n,
            constant: FieldElement::ZERO,
            linear: vec![FieldElement::ZERO; n],
            quadratic: BTreeMap::new(),
        }
    }

    fn check_element(&self, a: FieldElement) -> Result<()> {
        self.field.element(a.index()).map(|_| ())
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::Usage(format!("variable index {i} out of range for {} variables", self.n)))
        }
    }

    /// Adds `a` to the constant term.
    pub fn add_constant(&mut self, a: FieldElement) -> Result<()> {
        self.check_element(a)?;
        self.constant = self.field.add(self.constant, a);
        Ok(())
    }

    /// Adds `a·x_i`.
    pub fn add_linear(&mut self, i: usize, a: FieldElement) -> Result<()> {
        self.check_var(i)?;
        self.check_element(a)?;
        self.linear[i] = self.field.add(self.linear[i], a);
        Ok(())
    }

    /// Adds `a·x_i·x_j`; over GF(2) a square term is folded into `a·x_i`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, a: FieldElement) -> Result<()> {
        self.check_var(i)?;
        self.check_var(j)?;
        self.check_element(a)?;
        if i == j && self.field.order() == 2 {
            return self.add_linear(i, a);
        }
        let key = (i.min(j), i.max(j));
        let v = self.field.add(self.quadratic.get(&key).copied().unwrap_or_default(), a);
        if v.is_zero() {
            self.quadratic.remove(&key);
        } else {
            self.quadratic.insert(key, v);
        }
        Ok(())
    }

    /// `self + a·x_j`.
    pub fn plus_linear(&self, j: usize, a: FieldElement) -> Result<Self> {
        let mut g = self.clone();
        g.add_linear(j, a)?;
        Ok(g)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> FieldElement {
        self.constant
    }

    pub fn linear(&self) -> &[FieldElement] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), FieldElement> {
        &self.quadratic
    }

    /// True when the form has no degree-2 terms.
    pub fn is_affine(&self) -> bool {
        self.quadratic.is_empty()
    }

    pub fn eval(&self, x: &Word) -> Result<FieldElement> {
        x.check_len(self.n)?;
        Ok(self.eval_slice(x.entries()))
    }

    #[inline]
    pub(crate) fn eval_slice(&self, x: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = self.constant;
        for (&b, &xi) in self.linear.iter().zip(x) {
            acc = f.add(acc, f.mul(b, xi));
        }
        for (&(i, j), &a) in &self.quadratic {
            acc = f.add(acc, f.mul(a, f.mul(x[i], x[j])));
        }
        acc
    }

    /// Shift coefficients for translation by `c`, extracted symbolically from
    /// the coefficients (no interpolation, so they are defined on all of
    /// `F^n`).
    pub fn beta(&self, c: &Word) -> Result<Beta> {
        c.check_len(self.n)?;
        Ok(self.beta_slice(c.entries()))
    }

    pub(crate) fn beta_slice(&self, c: &[FieldElement]) -> Beta {
        let f = &self.field;
        let mut constant = FieldElement::ZERO;
        let mut linear = vec![FieldElement::ZERO; self.n];
        for (&b, &ci) in self.linear.iter().zip(c) {
            constant = f.add(constant, f.mul(b, ci));
        }
        for (&(i, j), &a) in &self.quadratic {
            if i == j {
                // a(x+c)² - ax² = 2ac·x + ac²
                let ac = f.mul(a, c[i]);
                linear[i] = f.add(linear[i], f.add(ac, ac));
                constant = f.add(constant, f.mul(ac, c[i]));
            } else {
                linear[i] = f.add(linear[i], f.mul(a, c[j]));
                linear[j] = f.add(linear[j], f.mul(a, c[i]));
                constant = f.add(constant, f.mul(a, f.mul(c[i], c[j])));
            }
        }
        Beta { constant, linear }
    }

    /// Values of the form on every codeword of `base`.
    pub fn value_table(&self, base: &LinearCode, limits: &Limits) -> Result<BTreeMap<Word, FieldElement>> {
        if base.len() != self.n || base.field() != &self.field {
            return Err(Error::Usage("form and base code disagree on field or length".into()));
        }
        Ok(base
            .enumerate(limits)?
            .map(|w| {
                let v = self.eval_slice(w.entries());
                (w, v)
            })
            .collect())
    }

    /// Number of coefficient slots of a reduced form on `m` variables.
    fn slot_count(q: usize, m: usize) -> usize {
        let diag = if q > 2 { m } else { 0 };
        1 + m + m * m.saturating_sub(1) / 2 + diag
    }

    /// Builds a reduced form from slot values in the enumeration layout:
    /// constant, linear terms, off-diagonal pairs in lexicographic order,
    /// then (q > 2 only) diagonal terms.
    fn from_slots(field: &FieldSpec, m: usize, slots: &[FieldElement]) -> Self {
        let mut g = Self::zero(field, m);
        g.constant = slots[0];
        g.linear.copy_from_slice(&slots[1..=m]);
        let mut k = m + 1;
        for i in 0..m {
            for j in i + 1..m {
                if !slots[k].is_zero() {
                    g.quadratic.insert((i, j), slots[k]);
                }
                k += 1;
            }
        }
        if field.order() > 2 {
            for i in 0..m {
                if !slots[k].is_zero() {
                    g.quadratic.insert((i, i), slots[k]);
                }
                k += 1;
            }
        }
        g
    }

    /// Uniform over the reduced coefficient space; deterministic in `seed`.
    pub fn random(field: &FieldSpec, m: usize, seed: u64, zero_constant: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(field, m, &mut rng, zero_constant)
    }

    pub fn random_with<R: Rng>(field: &FieldSpec, m: usize, rng: &mut R, zero_constant: bool) -> Self {
        let q = field.order();
        let mut slots: Vec<FieldElement> =
            (0..Self::slot_count(q, m)).map(|_| FieldElement::from_index(rng.gen_range(0..q) as u8)).collect();
        if zero_constant {
            slots[0] = FieldElement::ZERO;
        }
        Self::from_slots(field, m, &slots)
    }
}

/// Closed-form number of distinct quadratic functions `F^m → F`:
/// `q^{m(m-1)/2 + 2m + 1}` for q > 2 and `2^{m(m-1)/2 + m + 1}` for q = 2.
pub fn count_quadratics(field: &FieldSpec, m: usize) -> BigUint {
    let q = field.order();
    let exp = QuadraticForm::slot_count(q, m);
    BigUint::from(q).pow(exp as u32)
}

/// Every reduced form on `m` variables exactly once, optionally restricted to
/// zero constant term.
pub fn enumerate_quadratics(field: &FieldSpec, m: usize, zero_constant: bool, limits: &Limits) -> Result<QuadraticForms> {
    let q = field.order();
    let free = QuadraticForm::slot_count(q, m) - zero_constant as usize;
    let count = word::space_size(q, free)
        .filter(|&c| c <= limits.enumeration)
        .ok_or_else(|| Error::resource("quadratic form enumeration", format!("{q}^{free}"), limits.enumeration))?;
    Ok(QuadraticForms {
        field: field.clone(),
        m,
        zero_constant,
        slots: vec![FieldElement::ZERO; free],
        remaining: count,
    })
}

pub struct QuadraticForms {
    field: FieldSpec,
    m: usize,
    zero_constant: bool,
    slots: Vec<FieldElement>,
    remaining: u64,
}

impl Iterator for QuadraticForms {
    type Item = QuadraticForm;

    fn next(&mut self) -> Option<QuadraticForm> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let g = if self.zero_constant {
            let mut full = Vec::with_capacity(self.slots.len() + 1);
            full.push(FieldElement::ZERO);
            full.extend_from_slice(&self.slots);
            QuadraticForm::from_slots(&self.field, self.m, &full)
        } else {
            QuadraticForm::from_slots(&self.field, self.m, &self.slots)
        };
        word::increment(self.field.order(), &mut self.slots);
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

/// Brute-force count of distinct value tables over all reduced forms on
/// `F^m`. Independent of [`count_quadratics`]; used to confirm it.
pub fn count_distinct_functions(field: &FieldSpec, m: usize, limits: &Limits) -> Result<u64> {
    let q = field.order();
    let points = word::space_size(q, m).ok_or_else(|| Error::resource("value table", format!("{q}^{m}"), u64::MAX))?;
    let forms = enumerate_quadratics(field, m, false, limits)?;
    if (forms.remaining as u128) * (points as u128) > limits.enumeration as u128 * 16 {
        return Err(Error::resource(
            "distinct-function count",
            (forms.remaining as u128) * (points as u128),
            limits.enumeration as u128 * 16,
        ));
    }
    let grid: Vec<Vec<FieldElement>> = {
        let mut x = vec![FieldElement::ZERO; m];
        (0..points)
            .map(|_| {
                let cur = x.clone();
                word::increment(q, &mut x);
                cur
            })
            .collect()
    };
    let tables: BTreeSet<Vec<FieldElement>> = forms.map(|g| grid.iter().map(|x| g.eval_slice(x)).collect()).collect();
    Ok(tables.len() as u64)
}
