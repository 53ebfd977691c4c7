//! Arithmetic in GF(p^k).
//!
//! An element is stored as its index `Σ c_i p^i`, where `Σ c_i x^i` is the
//! polynomial representative modulo the field's modulus. Ascending index is
//! the canonical element order: `α_0 = 0, α_1 = 1, α_2, …, α_{q-1}`. All
//! operations go through precomputed `q × q` tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default ceiling on the field order. Words are written as digit strings,
/// which caps the alphabet at ten symbols.
pub const DEFAULT_MAX_ORDER: usize = 9;

/// Hard ceiling imposed by the `u8` element representation.
pub const ABSOLUTE_MAX_ORDER: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct FieldElement(pub(crate) u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Unchecked constructor; validate with [`FieldSpec::element`] when the
    /// index comes from outside.
    pub const fn from_index(index: u8) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u8,
    k: u8,
    modulus: Vec<u8>,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field GF(p^k) together with its arithmetic tables. Cloning is
/// cheap; equality compares `(p, k, modulus)`.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("k", &self.inner.k)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p); coefficients
/// low-to-high.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * mi) % p;
            }
        }
    }
    a
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut divisor: Vec<u32> = (0..d)
                .map(|i| ((idx / (p as usize).pow(i as u32)) % p as usize) as u32)
                .collect();
            divisor.push(1);
            if poly_rem(modulus.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, &[])
    }

    /// GF(q) with the shipped default modulus: x²+x+1 for q = 4, x³+x+1 for
    /// q = 8, x²+1 for q = 9.
    pub fn with_order(q: u32) -> Result<Self> {
        match q {
            4 => Self::new(2, 2, &[1, 1, 1]),
            8 => Self::new(2, 3, &[1, 1, 0, 1]),
            9 => Self::new(3, 2, &[1, 0, 1]),
            _ if is_prime(q) => Self::prime(q),
            _ => Err(Error::InvalidField(format!(
                "no default field of order {q} (supported: prime orders, 4, 8, 9)"
            ))),
        }
    }

    /// GF(p^k) modulo the given monic polynomial (coefficients low-to-high,
    /// ignored when k = 1), with the default order ceiling.
    pub fn new(p: u32, k: u32, modulus: &[u32]) -> Result<Self> {
        Self::with_ceiling(p, k, modulus, DEFAULT_MAX_ORDER)
    }

    pub fn with_ceiling(p: u32, k: u32, modulus: &[u32], max_order: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let max_order = max_order.min(ABSOLUTE_MAX_ORDER);
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= max_order as u64)
            .ok_or_else(|| Error::resource("field order", format!("{p}^{k}"), max_order))?
            as usize;
        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1]
        } else {
            if modulus.len() != k as usize + 1 {
                return Err(Error::InvalidField(format!(
                    "modulus must have {} coefficients, got {}",
                    k + 1,
                    modulus.len()
                )));
            }
            if let Some(c) = modulus.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidField(format!("modulus coefficient {c} not in [0,{p})")));
            }
            if modulus[k as usize] != 1 {
                return Err(Error::InvalidField("modulus must be monic".into()));
            }
            if !is_irreducible(modulus, p) {
                return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over GF({p})")));
            }
            modulus.to_vec()
        };

        let digits = |x: usize| -> Vec<u32> {
            (0..k).map(|i| ((x / (p as usize).pow(i)) % p as usize) as u32).collect()
        };
        let index = |c: &[u32]| -> usize {
            c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum) as u8;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut rem = poly_rem(prod, &modulus, p);
                rem.resize(k as usize, 0);
                mul[a * q + b] = index(&rem) as u8;
            }
        }
        let neg: Vec<u8> = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv: Vec<u8> = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 })
            .collect();

        Ok(FieldSpec {
            inner: Arc::new(Tables {
                p: p as u8,
                k: k as u8,
                modulus: modulus.iter().map(|&c| c as u8).collect(),
                q,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.inner.k as u32
    }

    /// Modulus coefficients low-to-high; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> Vec<u32> {
        self.inner.modulus.iter().map(|&c| c as u32).collect()
    }

    pub fn order(&self) -> usize {
        self.inner.q
    }

    /// Validates an element index.
    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.inner.q {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::Usage(format!("{index} is not an element of GF({})", self.inner.q)))
        }
    }

    /// `(α_0, …, α_{q-1})` in ascending index order.
    pub fn canonical_elements(&self) -> Vec<FieldElement> {
        (0..self.inner.q).map(|i| FieldElement(i as u8)).collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.inner.add[a.index() * self.inner.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.inner.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.inner.mul[a.index() * self.inner.q + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::Domain("zero has no multiplicative inverse".into()))
        } else {
            Ok(FieldElement(self.inner.inv[a.index()]))
        }
    }

    /// Additive order of `a`: 1 for zero, p otherwise.
    pub fn additive_order(&self, a: FieldElement) -> u64 {
        if a.is_zero() {
            1
        } else {
            self.inner.p as u64
        }
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Element ↔ text digit. Digits run `0-9` then `a-z`.
    pub fn to_digit(&self, a: FieldElement) -> char {
        char::from_digit(a.0 as u32, 36).expect("element index below 36")
    }

    pub fn from_digit(&self, c: char) -> Result<FieldElement> {
        Some(c)
            .filter(|c| c.is_ascii_digit() || c.is_ascii_lowercase())
            .and_then(|c| c.to_digit(36))
            .filter(|&d| (d as usize) < self.inner.q)
            .map(|d| FieldElement(d as u8))
            .ok_or_else(|| Error::Parse(format!("{c:?} is not a digit of GF({})", self.inner.q)))
    }
}
