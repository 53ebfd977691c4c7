//! 1-perfectness sweeps: for a word `v`, the ball count is the number of
//! codewords among `v` and its `N(q-1)` neighbors at Hamming distance 1. A
//! code is 1-perfect iff every ball count is exactly 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::word::{self, Word};
use crate::Limits;

/// At most this many violation witnesses are kept in a report.
pub const MAX_WITNESSES: usize = 10;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every word of `F^N`.
    Exhaustive,
    /// `trials` words drawn uniformly with a seeded generator.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub word: Word,
    pub ball_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerfectnessReport {
    pub mode: ReportMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub words_checked: u64,
    pub violation_count: u64,
    /// The first [`MAX_WITNESSES`] violations in sweep order.
    pub violations: Vec<Violation>,
    pub verdict: bool,
}

#[derive(Default)]
struct Partial {
    checked: u64,
    count: u64,
    witnesses: Vec<Violation>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.count += other.count;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        self
    }

    fn record(&mut self, w: &[FieldElement], ball: usize) {
        self.checked += 1;
        if ball != 1 {
            self.count += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Violation { word: Word::new(w.to_vec()), ball_count: ball });
            }
        }
    }
}

/// Number of members among `v` and its distance-1 neighbors. `v` is restored
/// before returning.
pub fn ball_count<F: Fn(&[FieldElement]) -> bool>(q: usize, v: &mut [FieldElement], member: &F) -> usize {
    let mut count = member(v) as usize;
    for t in 0..v.len() {
        let orig = v[t];
        for a in 0..q {
            if a != orig.index() {
                v[t] = FieldElement::from_index(a as u8);
                count += member(v) as usize;
            }
        }
        v[t] = orig;
    }
    count
}

/// Runs the per-word ball test over the whole space or a seeded sample.
/// Chunks are fixed-size and merged in order, so the report does not depend
/// on the number of worker threads.
pub fn verify_perfect<F>(field: &FieldSpec, length: usize, member: F, mode: VerifyMode, limits: &Limits) -> Result<PerfectnessReport>
where
    F: Fn(&[FieldElement]) -> bool + Sync,
{
    let q = field.order();
    let (partial, report_mode, seed) = match mode {
        VerifyMode::Exhaustive => {
            let total = word::space_size(q, length)
                .filter(|&t| t <= limits.enumeration)
                .ok_or_else(|| Error::resource("exhaustive perfectness sweep", format!("{q}^{length}"), limits.enumeration))?;
            let chunks = total.div_ceil(CHUNK);
            let parts: Vec<Partial> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * CHUNK;
                    let end = (start + CHUNK).min(total);
                    let mut v = vec![FieldElement::ZERO; length];
                    word::decode_index(q, start, &mut v);
                    let mut part = Partial::default();
                    for _ in start..end {
                        let ball = ball_count(q, &mut v, &member);
                        part.record(&v, ball);
                        word::increment(q, &mut v);
                    }
                    part
                })
                .collect();
            (parts.into_iter().fold(Partial::default(), Partial::merge), ReportMode::Exhaustive, None)
        }
        VerifyMode::Sampled { trials, seed } => {
            let chunks = trials.div_ceil(CHUNK);
            let parts: Vec<Partial> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let n = CHUNK.min(trials - c * CHUNK);
                    let mut v = vec![FieldElement::ZERO; length];
                    let mut part = Partial::default();
                    for _ in 0..n {
                        for x in v.iter_mut() {
                            *x = FieldElement::from_index(rng.gen_range(0..q) as u8);
                        }
                        let ball = ball_count(q, &mut v, &member);
                        part.record(&v, ball);
                    }
                    part
                })
                .collect();
            (parts.into_iter().fold(Partial::default(), Partial::merge), ReportMode::Sampled, Some(seed))
        }
    };
    Ok(PerfectnessReport {
        mode: report_mode,
        seed,
        words_checked: partial.checked,
        violation_count: partial.count,
        verdict: partial.count == 0,
        violations: partial.witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code_is_perfect() {
        let f = FieldSpec::prime(2).unwrap();
        let member = |w: &[FieldElement]| w[0] == w[1] && w[1] == w[2];
        let r = verify_perfect(&f, 3, member, VerifyMode::Exhaustive, &Limits::default()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.words_checked, 8);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn witnesses_are_truncated_but_counted() {
        let f = FieldSpec::prime(2).unwrap();
        let r = verify_perfect(&f, 6, |_| true, VerifyMode::Exhaustive, &Limits::default()).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.violation_count, 64);
        assert_eq!(r.violations.len(), MAX_WITNESSES);
        assert_eq!(r.violations[0].ball_count, 7);
        assert!(r.violations[0].word.is_zero());
    }

    #[test]
    fn sampled_is_deterministic() {
        let f = FieldSpec::prime(3).unwrap();
        let member = |w: &[FieldElement]| w.iter().all(|x| x.is_zero());
        let mode = VerifyMode::Sampled { trials: 40_000, seed: 9 };
        let a = verify_perfect(&f, 4, member, mode, &Limits::default()).unwrap();
        let b = verify_perfect(&f, 4, member, mode, &Limits::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.words_checked, 40_000);
        assert!(!a.verdict);
    }

    #[test]
    fn exhaustive_respects_ceiling() {
        let f = FieldSpec::prime(3).unwrap();
        let l = Limits { enumeration: 100, ..Limits::default() };
        assert!(matches!(
            verify_perfect(&f, 5, |_| false, VerifyMode::Exhaustive, &l),
            Err(Error::Resource { .. })
        ));
    }
}
