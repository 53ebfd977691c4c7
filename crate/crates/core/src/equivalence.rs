//! Brute-force equivalence of small codes under the automorphisms of the
//! Hamming graph: a coordinate permutation composed with one alphabet
//! permutation per coordinate.
//!
//! The search fixes target coordinates one at a time, choosing a source
//! coordinate and an alphabet permutation, and backtracks as soon as the
//! projections of the two codes onto the fixed coordinates differ as
//! multisets. Codes whose sizes or distance distributions differ are
//! rejected before searching.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::word::Word;
use crate::Limits;

/// The map `x ↦ y` with `y_t = alphabet[t][x_{source[t]}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub source: Vec<usize>,
    pub alphabet: Vec<Vec<usize>>,
}

impl Equivalence {
    pub fn apply(&self, w: &Word) -> Word {
        Word::new(
            self.source
                .iter()
                .zip(&self.alphabet)
                .map(|(&s, psi)| FieldElement::from_index(psi[w.entries()[s].index()] as u8))
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.source.iter().enumerate().all(|(i, &s)| i == s)
            && self.alphabet.iter().all(|psi| psi.iter().enumerate().all(|(i, &x)| i == x))
    }
}

/// Multiset of pairwise distances `d(a, b)` over ordered pairs `a ≠ b`.
pub fn distance_distribution(words: &[Word]) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            *out.entry(a.distance(b)).or_insert(0) += 2;
        }
    }
    out
}

fn permutations(q: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; q], &mut out);
    out
}

/// `N! · (q!)^N`, saturating.
fn search_space(q: usize, n: usize) -> u128 {
    let qf: u128 = (1..=q as u128).product();
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k).saturating_mul(qf))
}

struct Search<'a> {
    a: &'a [Word],
    b: &'a [Word],
    perms: Vec<Vec<usize>>,
    n: usize,
    source: Vec<usize>,
    alphabet: Vec<usize>,
    used: Vec<bool>,
    // per-word projections built so far
    proj_a: Vec<Vec<u8>>,
    proj_b: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn projections_match(&self) -> bool {
        let mut pa = self.proj_a.clone();
        let mut pb = self.proj_b.clone();
        pa.sort_unstable();
        pb.sort_unstable();
        pa == pb
    }

    fn run(&mut self, t: usize) -> bool {
        if t == self.n {
            return true;
        }
        for s in 0..self.n {
            if self.used[s] {
                continue;
            }
            self.used[s] = true;
            for pi in 0..self.perms.len() {
                let psi = &self.perms[pi];
                for (pa, w) in self.proj_a.iter_mut().zip(self.a) {
                    pa.push(psi[w.entries()[s].index()] as u8);
                }
                for (pb, w) in self.proj_b.iter_mut().zip(self.b) {
                    pb.push(w.entries()[t].index() as u8);
                }
                let ok = self.projections_match();
                if ok {
                    self.source.push(s);
                    self.alphabet.push(pi);
                    if self.run(t + 1) {
                        return true;
                    }
                    self.source.pop();
                    self.alphabet.pop();
                }
                self.proj_a.iter_mut().for_each(|p| {
                    p.pop();
                });
                self.proj_b.iter_mut().for_each(|p| {
                    p.pop();
                });
            }
            self.used[s] = false;
        }
        false
    }
}

/// Searches for a Hamming-graph automorphism mapping the word set `a` onto
/// `b`. Returns `None` when the codes are inequivalent.
pub fn exact_equivalence(a: &[Word], b: &[Word], field: &FieldSpec, n: usize, limits: &Limits) -> Result<Option<Equivalence>> {
    let q = field.order();
    let space = search_space(q, n);
    if space > limits.equivalence_search {
        return Err(Error::resource("equivalence search", space, limits.equivalence_search));
    }
    for w in a.iter().chain(b) {
        w.check_len(n)?;
        if w.entries().iter().any(|e| e.index() >= q) {
            return Err(Error::Usage(format!("{w} is not a word over GF({q})")));
        }
    }
    let mut a: Vec<Word> = a.to_vec();
    let mut b: Vec<Word> = b.to_vec();
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    if a.len() != b.len() || distance_distribution(&a) != distance_distribution(&b) {
        return Ok(None);
    }
    let mut search = Search {
        a: &a,
        b: &b,
        perms: permutations(q),
        n,
        source: Vec::new(),
        alphabet: Vec::new(),
        used: vec![false; n],
        proj_a: vec![Vec::new(); a.len()],
        proj_b: vec![Vec::new(); b.len()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let alphabet = search.alphabet.iter().map(|&i| search.perms[i].clone()).collect();
    Ok(Some(Equivalence { source: search.source, alphabet }))
}
