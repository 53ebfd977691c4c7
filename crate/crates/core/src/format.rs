//! JSON and text formats.
//!
//! * field: `{"p": 2, "k": 2, "modulus": [1,1,1]}` (low-to-high, omitted
//!   when k = 1)
//! * linear code: `{"field": …, "n": 7, "generator": [[…], …]}`
//! * quadratic form: `{"n": 3, "constant": 0, "linear": [0,0,0],
//!   "quadratic": [{"i":1,"j":2,"a":1}, …]}` with 1-based indices
//! * code spec: `{"field": …, "base": …, "f": …}`
//! * automorphism: `{"perm": [2,3,0,1,4], "shift": "11001"}`, where output
//!   position `t` takes input position `perm[t]`
//! * codeword files: one digit string per line, LF-terminated

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linear_code::LinearCode;
use crate::propelinear::{Automorphism, CoordPermutation};
use crate::quadratic::QuadraticForm;
use crate::vs_code::VsCode;
use crate::word::Word;

/// Largest code length accepted from external input.
const MAX_INPUT_LENGTH: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearCodeJson {
    pub field: FieldJson,
    pub n: usize,
    pub generator: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub i: usize,
    pub j: usize,
    pub a: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticJson {
    pub n: usize,
    pub constant: usize,
    pub linear: Vec<usize>,
    pub quadratic: Vec<TermJson>,
}

/// Extra keys (e.g. a summary written by the CLI) are ignored on read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub field: FieldJson,
    pub base: LinearCodeJson,
    pub f: QuadraticJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismJson {
    pub perm: Vec<usize>,
    pub shift: String,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn check_length(n: usize) -> Result<()> {
    if n > MAX_INPUT_LENGTH {
        Err(Error::Parse(format!("length {n} exceeds the input ceiling {MAX_INPUT_LENGTH}")))
    } else {
        Ok(())
    }
}

impl FieldJson {
    pub fn from_field(f: &FieldSpec) -> Self {
        FieldJson { p: f.characteristic(), k: f.degree(), modulus: (f.degree() > 1).then(|| f.modulus()) }
    }

    pub fn to_field(&self) -> Result<FieldSpec> {
        match (&self.modulus, self.k) {
            (_, 1) => FieldSpec::prime(self.p),
            (Some(m), k) => FieldSpec::new(self.p, k, m),
            (None, k) => {
                let q = (self.p as u64).checked_pow(k).filter(|&q| q <= u32::MAX as u64).unwrap_or(0) as u32;
                let def = FieldSpec::with_order(q)?;
                if def.characteristic() == self.p && def.degree() == k {
                    Ok(def)
                } else {
                    Err(Error::InvalidField(format!("no default modulus for GF({}^{k})", self.p)))
                }
            }
        }
    }
}

impl LinearCodeJson {
    pub fn from_code(c: &LinearCode) -> Self {
        LinearCodeJson {
            field: FieldJson::from_field(c.field()),
            n: c.len(),
            generator: c.generator().iter().map(|r| r.iter().map(|e| e.index()).collect()).collect(),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let field = self.field.to_field()?;
        check_length(self.n)?;
        if self.generator.len() > self.n {
            return Err(Error::Parse("more generator rows than coordinates".into()));
        }
        let rows = self
            .generator
            .iter()
            .map(|r| Word::from_indices(&field, r).map(Word::into_entries))
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_generator(&field, self.n, rows)
    }
}

impl QuadraticJson {
    pub fn from_form(g: &QuadraticForm) -> Self {
        QuadraticJson {
            n: g.num_vars(),
            constant: g.constant().index(),
            linear: g.linear().iter().map(|e| e.index()).collect(),
            quadratic: g
                .quadratic()
                .iter()
                .map(|(&(i, j), a)| TermJson { i: i + 1, j: j + 1, a: a.index() })
                .collect(),
        }
    }

    pub fn to_form(&self, field: &FieldSpec) -> Result<QuadraticForm> {
        check_length(self.n)?;
        if self.linear.len() != self.n {
            return Err(Error::Parse(format!("linear part has {} entries, expected {}", self.linear.len(), self.n)));
        }
        let mut g = QuadraticForm::zero(field, self.n);
        g.add_constant(field.element(self.constant)?)?;
        for (i, &b) in self.linear.iter().enumerate() {
            g.add_linear(i, field.element(b)?)?;
        }
        for t in &self.quadratic {
            if t.i == 0 || t.j == 0 || t.i > t.j {
                return Err(Error::Parse(format!("quadratic term ({}, {}) needs 1 <= i <= j", t.i, t.j)));
            }
            g.add_quadratic(t.i - 1, t.j - 1, field.element(t.a)?)?;
        }
        Ok(g)
    }
}

impl CodeSpecJson {
    pub fn from_code(c: &VsCode) -> Self {
        CodeSpecJson {
            field: FieldJson::from_field(c.field()),
            base: LinearCodeJson::from_code(c.base()),
            f: QuadraticJson::from_form(c.switching_function()),
        }
    }

    pub fn to_code(&self) -> Result<VsCode> {
        let field = self.field.to_field()?;
        let base = self.base.to_code()?;
        if base.field() != &field {
            return Err(Error::Parse("base code field differs from the code field".into()));
        }
        let f = self.f.to_form(&field)?;
        VsCode::new(base, f)
    }
}

impl AutomorphismJson {
    pub fn from_automorphism(a: &Automorphism) -> Self {
        AutomorphismJson { perm: a.perm.source().to_vec(), shift: a.shift.to_string() }
    }

    pub fn to_automorphism(&self, field: &FieldSpec) -> Result<Automorphism> {
        check_length(self.perm.len())?;
        let perm = CoordPermutation::from_source(self.perm.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Automorphism::new(perm, Word::parse(field, &self.shift)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    serde_json::from_str::<FieldJson>(text).map_err(json_err)?.to_field()
}

pub fn parse_linear_code(text: &str) -> Result<LinearCode> {
    serde_json::from_str::<LinearCodeJson>(text).map_err(json_err)?.to_code()
}

pub fn parse_quadratic(field: &FieldSpec, text: &str) -> Result<QuadraticForm> {
    serde_json::from_str::<QuadraticJson>(text).map_err(json_err)?.to_form(field)
}

pub fn parse_code_spec(text: &str) -> Result<VsCode> {
    serde_json::from_str::<CodeSpecJson>(text).map_err(json_err)?.to_code()
}

pub fn parse_automorphism(field: &FieldSpec, text: &str) -> Result<Automorphism> {
    serde_json::from_str::<AutomorphismJson>(text).map_err(json_err)?.to_automorphism(field)
}

pub fn code_spec_to_json(c: &VsCode) -> serde_json::Value {
    serde_json::to_value(CodeSpecJson::from_code(c)).expect("code spec serializes")
}

/// Parses a codeword file. Blank lines are skipped; every other line must be
/// a digit string of length `len` (if given) over `field`. A trailing CR is
/// tolerated.
pub fn parse_codewords(field: &FieldSpec, text: &str, len: Option<usize>) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line).trim();
        if line.is_empty() {
            continue;
        }
        let w = Word::parse(field, line).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if let Some(n) = len {
            if w.len() != n {
                return Err(Error::Parse(format!("line {}: word has length {}, expected {n}", lineno + 1, w.len())));
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Sorted, deduplicated, LF-terminated digit strings.
pub fn write_codewords<'a, I: IntoIterator<Item = &'a Word>>(field: &FieldSpec, words: I) -> String {
    let mut lines: Vec<String> = words.into_iter().map(|w| w.to_digits(field)).collect();
    lines.sort();
    lines.dedup();
    let mut s = lines.join("\n");
    if !s.is_empty() {
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr;
    use crate::Limits;
    use proptest::prelude::*;

    fn example_code() -> VsCode {
        let f = FieldSpec::prime(2).unwrap();
        VsCode::new(LinearCode::full_space(&f, 2), expr::parse(&f, 2, "x1*x2").unwrap()).unwrap()
    }

    #[test]
    fn field_json() {
        let f = parse_field(r#"{"p": 2, "k": 2, "modulus": [1,1,1]}"#).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(serde_json::to_string(&FieldJson::from_field(&f)).unwrap(), r#"{"p":2,"k":2,"modulus":[1,1,1]}"#);
        let p = parse_field(r#"{"p": 3, "k": 1}"#).unwrap();
        assert_eq!(serde_json::to_string(&FieldJson::from_field(&p)).unwrap(), r#"{"p":3,"k":1}"#);
        assert_eq!(parse_field(r#"{"p": 3, "k": 2}"#).unwrap().order(), 9);
        assert!(parse_field(r#"{"p": 2, "k": 2, "modulus": [1,0,1]}"#).is_err());
        assert!(parse_field(r#"{"p": 2, "k": 40}"#).is_err());
        assert!(parse_field(r#"{"p": 2}"#).is_err());
    }

    #[test]
    fn quadratic_json_uses_one_based_indices() {
        let f = FieldSpec::prime(2).unwrap();
        let text = r#"{"n": 3, "constant": 0, "linear": [0,0,0], "quadratic": [{"i":1,"j":2,"a":1},{"i":1,"j":3,"a":1}]}"#;
        let g = parse_quadratic(&f, text).unwrap();
        assert_eq!(g, expr::parse(&f, 3, "x1*x2 + x1*x3").unwrap());
        assert_eq!(serde_json::from_str::<QuadraticJson>(text).unwrap(), QuadraticJson::from_form(&g));
        assert!(parse_quadratic(&f, r#"{"n": 1, "constant": 0, "linear": [0], "quadratic": [{"i":0,"j":1,"a":1}]}"#).is_err());
        assert!(parse_quadratic(&f, r#"{"n": 1, "constant": 2, "linear": [0], "quadratic": []}"#).is_err());
        assert!(parse_quadratic(&f, r#"{"n": 2, "constant": 0, "linear": [0], "quadratic": []}"#).is_err());
    }

    #[test]
    fn automorphism_json() {
        let c = example_code();
        let a = crate::propelinear::phi_w(&c, &Word::parse(c.field(), "11001").unwrap()).unwrap();
        let j = serde_json::to_string(&AutomorphismJson::from_automorphism(&a)).unwrap();
        assert_eq!(j, r#"{"perm":[2,3,0,1,4],"shift":"11001"}"#);
        assert_eq!(parse_automorphism(c.field(), &j).unwrap(), a);
        assert!(parse_automorphism(c.field(), r#"{"perm":[0,0],"shift":"11"}"#).is_err());
        assert!(parse_automorphism(c.field(), r#"{"perm":[0,1],"shift":"111"}"#).is_err());
    }

    #[test]
    fn code_spec_round_trip() {
        let c = example_code();
        let text = code_spec_to_json(&c).to_string();
        let back = parse_code_spec(&text).unwrap();
        assert!(back.same_code(&c, &Limits::default()).unwrap());
        assert_eq!(back.switching_function(), c.switching_function());
        assert!(parse_code_spec("{}").is_err());
    }

    #[test]
    fn codeword_files() {
        let c = example_code();
        let words: Vec<Word> = c.enumerate(&Limits::default()).unwrap().collect();
        let text = write_codewords(c.field(), &words);
        assert_eq!(text.lines().count(), 16);
        assert!(text.ends_with('\n'));
        assert!(text.starts_with("00000\n"));
        let back = parse_codewords(c.field(), &text, Some(5)).unwrap();
        assert_eq!(back.len(), 16);
        assert!(parse_codewords(c.field(), "0101\n", Some(5)).is_err());
        assert!(parse_codewords(c.field(), "01012\n", None).is_err());
        assert_eq!(parse_codewords(c.field(), "00000\r\n\n11001\n", Some(5)).unwrap().len(), 2);
    }

    proptest! {
        #[test]
        fn codeword_file_round_trip(q in prop::sample::select(vec![2u32, 3, 4, 9]), rows in prop::collection::vec(prop::collection::vec(0usize..9, 6), 0..20)) {
            let f = FieldSpec::with_order(q).unwrap();
            let words: Vec<Word> = rows.iter().map(|r| Word::from_indices(&f, &r.iter().map(|x| x % f.order()).collect::<Vec<_>>()).unwrap()).collect();
            let text = write_codewords(&f, &words);
            let mut expect = words.clone();
            expect.sort();
            expect.dedup();
            prop_assert_eq!(parse_codewords(&f, &text, Some(6)).unwrap(), expect);
        }
    }
}
