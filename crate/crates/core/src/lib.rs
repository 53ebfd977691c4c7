//! Vasil'ev–Schönheim codes `C(H, f)` over small finite fields, built from a
//! linear base code `H` and a quadratic switching function `f`, together with
//! machinery that certifies the propelinear structure `{Φ_w}` of such codes
//! and identifies the resulting group.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: arithmetic in GF(p^k) with a canonical element order;
//! * [`word`] and [`linear_code`]: words of `F^n`, base codes, Hamming codes;
//! * [`quadratic`] and [`expr`]: switching functions and their shift
//!   coefficients;
//! * [`vs_code`] and [`perfect`]: the composed code and perfectness sweeps;
//! * [`propelinear`]: the automorphisms `Π_j^β`, `Π^c`, `Φ_w` and the
//!   propelinearity certificate;
//! * [`group`] and [`equivalence`]: group tables, fingerprints, the small
//!   group catalog, and brute-force code equivalence;
//! * [`format`]: the JSON and codeword-file formats.

pub mod equivalence;
pub mod error;
pub mod expr;
pub mod field;
pub mod format;
pub mod group;
pub mod linear_code;
mod matrix;
pub mod perfect;
pub mod propelinear;
pub mod quadratic;
pub mod vs_code;
pub mod word;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use linear_code::LinearCode;
pub use quadratic::{Beta, QuadraticForm};
pub use vs_code::VsCode;
pub use word::Word;

/// Ceilings that bound the work done by exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of words any enumeration or exhaustive sweep may visit.
    pub enumeration: u64,
    /// Largest base-code length accepted by constructors.
    pub max_length: usize,
    /// Codes up to this size get an exhaustive pairwise closure check.
    pub exhaustive_closure: u64,
    /// Largest group for which a full multiplication table is materialized.
    pub group_table: u64,
    /// Ceiling on `N! * (q!)^N` for the brute-force equivalence search.
    pub equivalence_search: u128,
    /// Number of sampled pairs in the structural closure mode.
    pub closure_samples: u64,
    /// Sampled codewords (and as many non-codewords) per automorphism check
    /// when the code is too large to sweep.
    pub automorphism_samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1 << 24,
            max_length: 1 << 12,
            exhaustive_closure: 1 << 12,
            group_table: 1 << 12,
            equivalence_search: 10_000_000,
            closure_samples: 100_000,
            automorphism_samples: 32,
        }
    }
}
