//! Automorphisms of `C(H, f)` built from the shift coefficients of a
//! quadratic `f`, and the certificate that `{Φ_w : w ∈ C}` is a propelinear
//! structure.
//!
//! * `Π_j^β` moves coordinate `j` of block `v_{α+β}` to coordinate `j` of
//!   block `v_α`, for every `α`, and fixes everything else.
//! * `Π^c = Π_1^{β_1^c} ⋯ Π_n^{β_n^c}`, with `β^c` the shift coefficients of
//!   `f` for translation by `c`. The factors have disjoint supports.
//! * `Φ_w(v) = w + Π^c(v)` with `c = Σ_α w_α`.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::vs_code::VsCode;
use crate::word::Word;
use crate::Limits;

/// A coordinate permutation acting by `(π·v)_t = v_{source[t]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordPermutation {
    source: Vec<usize>,
}

impl CoordPermutation {
    pub fn identity(len: usize) -> Self {
        CoordPermutation { source: (0..len).collect() }
    }

    /// `source[t]` is the input position that lands at output position `t`.
    pub fn from_source(source: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; source.len()];
        for &s in &source {
            if s >= source.len() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::Usage(format!("{source:?} is not a permutation")));
            }
        }
        Ok(CoordPermutation { source })
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.source.iter().enumerate().all(|(i, &s)| i == s)
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.source.iter().map(|&s| v[s]).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CoordPermutation) -> CoordPermutation {
        CoordPermutation { source: self.source.iter().map(|&s| other.source[s]).collect() }
    }

    pub fn inverse(&self) -> CoordPermutation {
        let mut inv = vec![0; self.source.len()];
        for (t, &s) in self.source.iter().enumerate() {
            inv[s] = t;
        }
        CoordPermutation { source: inv }
    }

    /// Nontrivial cycles, each starting at its smallest position, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.source[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                cyc.push(t);
                t = self.source[t];
            }
            out.push(cyc);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Cycle notation with 1-based positions, e.g. `(13)(24)`; positions
    /// above 9 are comma-separated. The identity renders as `Id`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "Id".into();
        }
        let sep = if self.len() > 9 { "," } else { "" };
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|t| (t + 1).to_string()).collect::<Vec<_>>().join(sep)))
            .collect()
    }
}

impl fmt::Display for CoordPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A Hamming-graph isometry `v ↦ shift + perm·v`. The alphabet permutations
/// are the translations `x ↦ x + shift_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub perm: CoordPermutation,
    pub shift: Word,
}

impl Automorphism {
    pub fn identity(len: usize) -> Self {
        Automorphism { perm: CoordPermutation::identity(len), shift: Word::zero(len) }
    }

    /// Unchecked constructor, also usable for maps that are not automorphisms
    /// of any particular code.
    pub fn new(perm: CoordPermutation, shift: Word) -> Result<Self> {
        if perm.len() != shift.len() {
            return Err(Error::Usage("permutation and shift lengths differ".into()));
        }
        Ok(Automorphism { perm, shift })
    }

    pub fn translation(shift: Word) -> Self {
        Automorphism { perm: CoordPermutation::identity(shift.len()), shift }
    }

    pub fn len(&self) -> usize {
        self.shift.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shift.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.shift.is_zero()
    }

    pub fn apply(&self, field: &FieldSpec, v: &Word) -> Result<Word> {
        v.check_len(self.len())?;
        Ok(Word::new(self.apply_slice(field, v.entries())))
    }

    pub(crate) fn apply_slice(&self, field: &FieldSpec, v: &[FieldElement]) -> Vec<FieldElement> {
        self.perm
            .source
            .iter()
            .zip(self.shift.entries())
            .map(|(&s, &a)| field.add(a, v[s]))
            .collect()
    }

    /// `self ∘ other = (w₁ + π₁·w₂, π₁π₂)`.
    pub fn compose(&self, field: &FieldSpec, other: &Automorphism) -> Automorphism {
        Automorphism {
            shift: Word::new(self.apply_slice(field, other.shift.entries())),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn inverse(&self, field: &FieldSpec) -> Automorphism {
        let perm = self.perm.inverse();
        let neg: Vec<FieldElement> = perm.apply(self.shift.entries()).into_iter().map(|x| field.neg(x)).collect();
        Automorphism { perm, shift: Word::new(neg) }
    }

    /// Exact multiplicative order. If the permutation has order `k`, then
    /// `self^k` is a translation, whose order is 1 or p.
    pub fn order(&self, field: &FieldSpec) -> u64 {
        let k = self.perm.order();
        let mut power = Automorphism::identity(self.len());
        for _ in 0..k {
            power = self.compose(field, &power);
        }
        debug_assert!(power.perm.is_identity());
        if power.shift.is_zero() {
            k
        } else {
            k * field.characteristic() as u64
        }
    }
}

/// `Π_j^β` for 1-based block coordinate `j`.
pub fn pi_j_beta(code: &VsCode, j: usize, beta: FieldElement) -> Result<CoordPermutation> {
    let n = code.block_len();
    if j == 0 || j > n {
        return Err(Error::Usage(format!("block coordinate {j} out of range 1..={n}")));
    }
    code.field().element(beta.index())?;
    let mut source: Vec<usize> = (0..code.len()).collect();
    apply_pi_j_beta(code, j - 1, beta, &mut source);
    Ok(CoordPermutation { source })
}

fn apply_pi_j_beta(code: &VsCode, j0: usize, beta: FieldElement, source: &mut [usize]) {
    if beta.is_zero() {
        return;
    }
    let f = code.field();
    for alpha in f.canonical_elements() {
        source[code.coordinate(alpha, j0)] = code.coordinate(f.add(alpha, beta), j0);
    }
}

/// `Π^c` for `c ∈ F^n` (the permutation is defined for any `c`; the
/// construction uses `c ∈ H`).
pub fn pi_c(code: &VsCode, c: &Word) -> Result<CoordPermutation> {
    c.check_len(code.block_len())?;
    Ok(pi_c_slice(code, c.entries()))
}

fn pi_c_slice(code: &VsCode, c: &[FieldElement]) -> CoordPermutation {
    let beta = code.switching_function().beta_slice(c);
    let mut source: Vec<usize> = (0..code.len()).collect();
    for (j0, &b) in beta.linear.iter().enumerate() {
        apply_pi_j_beta(code, j0, b, &mut source);
    }
    CoordPermutation { source }
}

fn require_zero_at_origin(code: &VsCode) -> Result<()> {
    let f = code.switching_function();
    if f.constant().is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("f(0) = {} but the construction needs f(0) = 0", f.constant())))
    }
}

/// `Φ_w` for a codeword `w`.
pub fn phi_w(code: &VsCode, w: &Word) -> Result<Automorphism> {
    require_zero_at_origin(code)?;
    if !code.contains(w)? {
        return Err(Error::Usage(format!("{w} is not a codeword")));
    }
    Ok(phi_unchecked(code, w.entries()))
}

fn phi_unchecked(code: &VsCode, w: &[FieldElement]) -> Automorphism {
    let c = code.block_sum_slice(w);
    Automorphism { perm: pi_c_slice(code, &c), shift: Word::new(w.to_vec()) }
}

fn maps_into_code(code: &VsCode, phi: &Automorphism, v: &[FieldElement]) -> bool {
    code.contains_slice(&phi.apply_slice(code.field(), v))
}

/// Whether `phi` maps the code onto itself. Exhaustive over all codewords
/// when the code is small enough (injectivity then gives surjectivity);
/// otherwise seeded samples of codewords and non-codewords must keep their
/// membership.
pub fn verify_automorphism(code: &VsCode, phi: &Automorphism, limits: &Limits, seed: u64) -> bool {
    if phi.len() != code.len() {
        return false;
    }
    match code.enumerate(limits) {
        Ok(words) => {
            let words: Vec<Word> = words.collect();
            words.par_iter().all(|v| maps_into_code(code, phi, v.entries()))
        }
        Err(_) => sampled_automorphism_check(code, phi, &mut ChaCha8Rng::seed_from_u64(seed), limits.automorphism_samples),
    }
}

fn sampled_automorphism_check<R: Rng>(code: &VsCode, phi: &Automorphism, rng: &mut R, samples: usize) -> bool {
    let q = code.field().order();
    for _ in 0..samples {
        let w = code.random_codeword(rng);
        if !maps_into_code(code, phi, w.entries()) {
            return false;
        }
        let v: Vec<FieldElement> = (0..code.len()).map(|_| FieldElement::from_index(rng.gen_range(0..q) as u8)).collect();
        if code.contains_slice(&v) != maps_into_code(code, phi, &v) {
            return false;
        }
    }
    true
}

/// Checks `Π^c ∘ Π^d = Π^{c+d}` for every pair of base codewords. Returns
/// the first failing pair, if any.
pub fn pipi_failure(code: &VsCode, limits: &Limits) -> Result<Option<(Word, Word)>> {
    let base: Vec<Word> = code.base().enumerate(limits)?.collect();
    let pairs = (base.len() as u64).pow(2);
    if pairs > limits.enumeration {
        return Err(Error::resource("pairwise permutation check", pairs, limits.enumeration));
    }
    let f = code.field();
    let perms: Vec<CoordPermutation> = base.iter().map(|c| pi_c_slice(code, c.entries())).collect();
    Ok(base.par_iter().enumerate().find_map_first(|(a, c)| {
        base.iter().enumerate().find_map(|(b, d)| {
            let sum = crate::word::add_slices(f, c.entries(), d.entries());
            (perms[a].compose(&perms[b]) != pi_c_slice(code, &sum)).then(|| (c.clone(), d.clone()))
        })
    }))
}

pub fn verify_pipi(code: &VsCode, limits: &Limits) -> Result<bool> {
    Ok(pipi_failure(code, limits)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMode {
    /// Every ordered pair of codewords.
    Exhaustive,
    /// `Π^cΠ^d = Π^{c+d}` over all base pairs plus sampled compositions.
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub kind: &'static str,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropelinearCertificate {
    pub length: usize,
    pub code_size: u64,
    pub transitive: bool,
    pub closed: bool,
    pub closure_mode: ClosureMode,
    pub pairs_checked: u64,
    /// Outcome of the `Π^cΠ^d = Π^{c+d}` check (always run).
    pub pipi: bool,
    pub seed: u64,
    pub failures: Vec<Failure>,
    /// `|C|` when the structure acts regularly on the code.
    pub group_order: Option<u64>,
}

impl PropelinearCertificate {
    pub fn is_propelinear(&self) -> bool {
        self.transitive && self.closed
    }
}

const MAX_FAILURES: usize = 10;

/// Builds `Φ_w` for every codeword and checks transitivity and closure
/// under composition.
///
/// Codes with at most `limits.exhaustive_closure` words get an exhaustive
/// check of every ordered pair and of every `Φ_w` against every codeword.
/// Larger codes get the structural check of `Π^cΠ^d = Π^{c+d}` over all
/// base pairs, `limits.closure_samples` seeded random pairs, and sampled
/// automorphism checks per `Φ_w`.
pub fn certify_propelinear(code: &VsCode, limits: &Limits, seed: u64) -> Result<PropelinearCertificate> {
    require_zero_at_origin(code)?;
    let field = code.field();
    let words: Vec<Word> = code.enumerate(limits)?.collect();
    let size = words.len() as u64;
    let phis: Vec<Automorphism> = words.par_iter().map(|w| phi_unchecked(code, w.entries())).collect();
    let exhaustive = size <= limits.exhaustive_closure;
    let mut failures = Vec::new();

    // Transitivity: Φ_w(0) = w and Φ_w stabilizes the code.
    let zero = vec![FieldElement::ZERO; code.len()];
    let bad_auto: Vec<usize> = phis
        .par_iter()
        .enumerate()
        .filter(|(i, phi)| {
            if phi.apply_slice(field, &zero) != words[*i].entries() {
                return true;
            }
            if exhaustive {
                !words.iter().all(|v| maps_into_code(code, phi, v.entries()))
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(*i as u64);
                !sampled_automorphism_check(code, phi, &mut rng, limits.automorphism_samples)
            }
        })
        .map(|(i, _)| i)
        .collect();
    let injective = words.iter().collect::<HashSet<_>>().len() == words.len();
    let transitive = bad_auto.is_empty() && injective;
    failures.extend(
        bad_auto
            .iter()
            .take(MAX_FAILURES)
            .map(|&i| Failure { kind: "not-an-automorphism", words: vec![words[i].clone()] }),
    );

    let pipi = pipi_failure(code, limits)?;
    if let Some((c, d)) = &pipi {
        failures.push(Failure { kind: "pi-composition", words: vec![c.clone(), d.clone()] });
    }

    let closure_fails = |a: usize, b: usize| -> bool {
        let comp = phis[a].compose(field, &phis[b]);
        !code.contains_slice(comp.shift.entries()) || phi_unchecked(code, comp.shift.entries()) != comp
    };
    let (pairs_checked, bad_pairs): (u64, Vec<(usize, usize)>) = if exhaustive {
        let bad = (0..words.len())
            .into_par_iter()
            .flat_map_iter(|a| (0..words.len()).filter(move |&b| closure_fails(a, b)).map(move |b| (a, b)))
            .collect();
        (size * size, bad)
    } else {
        let samples = limits.closure_samples;
        let bad = (0..samples)
            .into_par_iter()
            .filter_map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
                rng.set_stream(k);
                let (a, b) = (rng.gen_range(0..words.len()), rng.gen_range(0..words.len()));
                closure_fails(a, b).then_some((a, b))
            })
            .collect();
        (samples, bad)
    };
    failures.extend(
        bad_pairs
            .iter()
            .take(MAX_FAILURES)
            .map(|&(a, b)| Failure { kind: "not-closed", words: vec![words[a].clone(), words[b].clone()] }),
    );
    let closed = bad_pairs.is_empty() && pipi.is_none();

    Ok(PropelinearCertificate {
        length: code.len(),
        code_size: size,
        transitive,
        closed,
        closure_mode: if exhaustive { ClosureMode::Exhaustive } else { ClosureMode::Structural },
        pairs_checked,
        pipi: pipi.is_none(),
        seed,
        failures,
        group_order: (transitive && closed).then_some(size),
    })
}
