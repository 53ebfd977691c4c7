use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A word of `F^n`. The field is carried by the surrounding context (code,
/// form, or caller); coordinate 0 is leftmost in the text form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<FieldElement>);

impl Word {
    pub fn new(entries: Vec<FieldElement>) -> Self {
        Word(entries)
    }

    pub fn zero(len: usize) -> Self {
        Word(vec![FieldElement::ZERO; len])
    }

    /// Parses a digit string, validating each digit against `field`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        text.chars().map(|c| field.from_digit(c)).collect::<Result<Vec<_>>>().map(Word)
    }

    /// Builds a word from raw indices, validating each against `field`.
    pub fn from_indices(field: &FieldSpec, indices: &[usize]) -> Result<Self> {
        indices.iter().map(|&i| field.element(i)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [FieldElement] {
        &mut self.0
    }

    pub fn into_entries(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn distance(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn add(&self, field: &FieldSpec, other: &Word) -> Result<Word> {
        self.check_len(other.len())?;
        Ok(Word(add_slices(field, &self.0, &other.0)))
    }

    pub fn sub(&self, field: &FieldSpec, other: &Word) -> Result<Word> {
        self.check_len(other.len())?;
        Ok(Word(self.0.iter().zip(&other.0).map(|(&a, &b)| field.sub(a, b)).collect()))
    }

    pub fn scale(&self, field: &FieldSpec, s: FieldElement) -> Word {
        Word(self.0.iter().map(|&a| field.mul(s, a)).collect())
    }

    /// Sum of all entries, written `|v|` for a block `v`.
    pub fn entry_sum(&self, field: &FieldSpec) -> FieldElement {
        field.sum(self.0.iter().copied())
    }

    pub fn to_digits(&self, field: &FieldSpec) -> String {
        self.0.iter().map(|&e| field.to_digit(e)).collect()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::Usage(format!("word has length {}, expected {expected}", self.len())))
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{}", char::from_digit(e.0 as u32, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Vec<FieldElement>> for Word {
    fn from(v: Vec<FieldElement>) -> Self {
        Word(v)
    }
}

pub(crate) fn add_slices(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

/// Writes the word with lexicographic rank `index` in `F^len` (coordinate 0
/// most significant) into `out`.
pub(crate) fn decode_index(q: usize, mut index: u64, out: &mut [FieldElement]) {
    for slot in out.iter_mut().rev() {
        *slot = FieldElement((index % q as u64) as u8);
        index /= q as u64;
    }
}

/// Advances `w` to its lexicographic successor in `F^len`; returns false on
/// wrap-around.
pub(crate) fn increment(q: usize, w: &mut [FieldElement]) -> bool {
    for slot in w.iter_mut().rev() {
        if slot.index() + 1 < q {
            slot.0 += 1;
            return true;
        }
        slot.0 = 0;
    }
    false
}

/// `q^len` if it fits in a u64.
pub(crate) fn space_size(q: usize, len: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(len).ok()?)
}
