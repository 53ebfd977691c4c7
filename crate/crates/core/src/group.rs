//! Finite group tables for the propelinear structure `{Φ_w}`, isomorphism
//! invariants, and a small catalog of named groups to match them against.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::propelinear::{self, lcm, Automorphism};
use crate::vs_code::VsCode;
use crate::word::Word;
use crate::Limits;

/// A Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    /// Validates a Cayley table: element 0 must be a two-sided identity and
    /// every row and column a permutation. Associativity is checked when
    /// `order <= 64`.
    pub fn from_cayley(order: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != order * order || order == 0 {
            return Err(Error::Usage("Cayley table has the wrong shape".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::Inconsistent("element 0 is not the identity".into()));
            }
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                let (r, c) = (at(a, b), at(b, a));
                if r >= order || c >= order || std::mem::replace(&mut row[r], true) || std::mem::replace(&mut col[c], true) {
                    return Err(Error::Inconsistent(format!("row or column {a} is not a permutation")));
                }
            }
        }
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::Inconsistent(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        }
        let inv = (0..order).map(|a| (0..order).find(|&b| at(a, b) == 0).unwrap() as u32).collect();
        Ok(GroupTable { order, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Evaluates `Π g_i^{e_i}` left to right and compares with the identity.
    pub fn check_relation(&self, word: &[(usize, i64)]) -> Result<bool> {
        if let Some(&(g, _)) = word.iter().find(|(g, _)| *g >= self.order) {
            return Err(Error::Usage(format!("element {g} out of range")));
        }
        Ok(word.iter().fold(0, |acc, &(g, e)| self.mul(acc, self.pow(g, e))) == 0)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Same group with element `i` renamed `relabel[i]`; `relabel[0]` must be 0.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<Self> {
        let n = self.order;
        if relabel.len() != n || relabel[0] != 0 {
            return Err(Error::Usage("relabeling must fix the identity".into()));
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel[a] * n + relabel[b]] = relabel[self.mul(a, b)] as u32;
            }
        }
        Self::from_cayley(n, mul)
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        GroupTable { order: n, mul, inv: (0..n).map(|a| ((n - a) % n) as u32).collect() }
    }

    /// Dihedral group of order `2n`: element `r^i s^e` has index `i + n·e`.
    pub fn dihedral(n: usize) -> Self {
        let idx = |i: usize, e: usize| (i % n + n * e) as u32;
        let mut mul = Vec::with_capacity(4 * n * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (i, e) = (a % n, a / n);
                let (j, f) = (b % n, b / n);
                // r^i s^e r^j s^f = r^{i ± j} s^{e+f}
                let k = if e == 0 { i + j } else { i + n - j };
                mul.push(idx(k, (e + f) % 2));
            }
        }
        Self::from_cayley(2 * n, mul).expect("dihedral table is a group")
    }

    /// Quaternion group: index `2·u + s` for the unit `(1, i, j, k)[u]` with
    /// sign `(-1)^s`.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut mul = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (s, u) = T[a / 2][b / 2];
                mul.push((2 * u + (s + a % 2 + b % 2) % 2) as u32);
            }
        }
        Self::from_cayley(8, mul).expect("quaternion table is a group")
    }

    /// Direct product; `(a, b)` has index `a·|other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let (m, n) = (self.order, other.order);
        let mut mul = Vec::with_capacity(m * n * m * n);
        for x in 0..m * n {
            for y in 0..m * n {
                mul.push((self.mul(x / n, y / n) * n + other.mul(x % n, y % n)) as u32);
            }
        }
        Self::from_cayley(m * n, mul).expect("product of groups is a group")
    }
}

/// Isomorphism-invariant summary of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub abelian: bool,
    /// element order → number of elements of that order
    pub histogram: BTreeMap<u64, u64>,
    #[serde(rename = "center")]
    pub center_order: u64,
    #[serde(rename = "derived")]
    pub derived_order: u64,
    pub exponent: u64,
}

pub fn fingerprint(t: &GroupTable) -> GroupFingerprint {
    let n = t.order();
    let mut histogram = BTreeMap::new();
    let mut exponent = 1;
    for g in 0..n {
        let k = t.element_order(g);
        *histogram.entry(k).or_insert(0) += 1;
        exponent = lcm(exponent, k);
    }
    let center: Vec<usize> = (0..n).filter(|&z| (0..n).all(|g| t.mul(z, g) == t.mul(g, z))).collect();
    let mut commutators: Vec<usize> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            commutators.push(t.mul(t.mul(a, b), t.mul(t.inv(a), t.inv(b))));
        }
    }
    commutators.sort_unstable();
    commutators.dedup();
    let derived = t.generated_subgroup(&commutators);
    GroupFingerprint {
        order: n as u64,
        abelian: center.len() == n,
        histogram,
        center_order: center.len() as u64,
        derived_order: derived.len() as u64,
        exponent,
    }
}

/// Fingerprint of the abelian group `Z_{n_1} × ⋯ × Z_{n_k}` without
/// building its table. An element has order dividing `d` in `Z_n` in
/// exactly `gcd(d, n)` ways.
fn abelian_fingerprint(factors: &[u64]) -> GroupFingerprint {
    let order: u64 = factors.iter().product();
    let exponent = factors.iter().fold(1, |a, &b| lcm(a, b));
    let divisors: Vec<u64> = (1..=exponent).filter(|d| exponent % d == 0).collect();
    let mut histogram = BTreeMap::new();
    for &d in &divisors {
        let dividing: u64 = factors.iter().map(|&n| propelinear::gcd(d, n)).product();
        let smaller: u64 = divisors.iter().filter(|&&e| e < d && d % e == 0).map(|e| histogram[e]).sum();
        histogram.insert(d, dividing - smaller);
    }
    histogram.retain(|_, c| *c > 0);
    GroupFingerprint { order, abelian: true, histogram, center_order: order, derived_order: 1, exponent }
}

fn power_name(base: u64, k: usize) -> String {
    if k == 1 {
        format!("Z{base}")
    } else {
        format!("Z{base}^{k}")
    }
}

/// Named groups with their fingerprints: `Z_p^k` (k ≤ 6) and `Z_{p²}×Z_p^k`
/// (k ≤ 4) for p ∈ {2, 3, 5, 7}, plus D4, D4×Z2, Q8 and Q8×Z2.
pub fn catalog() -> &'static [(String, GroupFingerprint)] {
    static CATALOG: OnceLock<Vec<(String, GroupFingerprint)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7] {
            for k in 1..=6 {
                out.push((power_name(p, k), abelian_fingerprint(&vec![p; k])));
            }
            for k in 0..=4 {
                let mut factors = vec![p * p];
                factors.extend(std::iter::repeat_n(p, k));
                let name = if k == 0 { format!("Z{}", p * p) } else { format!("Z{}x{}", p * p, power_name(p, k)) };
                out.push((name, abelian_fingerprint(&factors)));
            }
        }
        let z2 = GroupTable::cyclic(2);
        let d4 = GroupTable::dihedral(4);
        let q8 = GroupTable::quaternion();
        out.push(("D4".into(), fingerprint(&d4)));
        out.push(("D4xZ2".into(), fingerprint(&d4.direct_product(&z2))));
        out.push(("Q8".into(), fingerprint(&q8)));
        out.push(("Q8xZ2".into(), fingerprint(&q8.direct_product(&z2))));
        out
    })
}

/// Catalog names whose fingerprint equals `fp`.
pub fn match_catalog(fp: &GroupFingerprint) -> Vec<String> {
    catalog().iter().filter(|(_, c)| c == fp).map(|(name, _)| name.clone()).collect()
}

/// The group `{Φ_w : w ∈ C}` with elements indexed by their shift word,
/// identity first.
#[derive(Debug, Clone)]
pub struct PropelinearGroup {
    pub elements: Vec<Automorphism>,
    pub table: GroupTable,
    index: HashMap<Word, usize>,
}

impl PropelinearGroup {
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `Φ_w` has order 1, p, or p² for every codeword `w`.
    pub fn orders_within_square_of_characteristic(&self, p: u64) -> bool {
        (0..self.table.order()).all(|g| [1, p, p * p].contains(&self.table.element_order(g)))
    }
}

/// Materializes the multiplication table of `{Φ_w}`. The product
/// `Φ_a ∘ Φ_b` is located through its shift `Φ_a(Φ_b(0))`, and its
/// permutation must agree with the stored element; any mismatch means the
/// structure is not closed.
pub fn build_group(code: &VsCode, limits: &Limits) -> Result<PropelinearGroup> {
    let size = code.size_u64().unwrap_or(u64::MAX);
    if size > limits.group_table {
        return Err(Error::resource("group table", size, limits.group_table));
    }
    let field = code.field();
    let mut words: Vec<Word> = code.enumerate(limits)?.collect();
    if let Some(z) = words.iter().position(Word::is_zero) {
        words.swap(0, z);
    }
    let elements: Vec<Automorphism> =
        words.iter().map(|w| propelinear::phi_w(code, w)).collect::<Result<Vec<_>>>()?;
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let n = elements.len();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let prod = elements[a].compose(field, &elements[b]);
                    match index.get(&prod.shift) {
                        Some(&i) if elements[i] == prod => Ok(i as u32),
                        _ => Err(Error::Inconsistent(format!(
                            "Φ_{} ∘ Φ_{} is not in the structure",
                            words[a], words[b]
                        ))),
                    }
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let table = GroupTable::from_cayley(n, rows.concat())?;
    Ok(PropelinearGroup { elements, table, index })
}
