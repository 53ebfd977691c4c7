use std::path::Path;

use anyhow::{anyhow, bail, Context as _};
use serde_json::{json, Map, Value};

use propel::equivalence::exact_equivalence;
use propel::format::{self, LinearCodeJson, QuadraticJson};
use propel::group::{build_group, fingerprint, match_catalog};
use propel::perfect::VerifyMode;
use propel::propelinear::certify_propelinear;
use propel::quadratic::{self, count_distinct_functions};
use propel::vs_code::reconstruct_f;
use propel::{expr, Error, FieldSpec, Limits, LinearCode, QuadraticForm, VsCode, Word};

use crate::io::{pretty, read, write_atomic};
use crate::{ConstructArgs, CountArgs, EquivalenceArgs, ExtractArgs, GroupArgs, Mode, Outcome, VerifyArgs};

pub struct Context {
    pub limits: Limits,
    pub seed: u64,
}

fn big_json(x: &num_bigint::BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn param<'a>(spec: &'a str, prefix: &str, key: &str) -> Option<&'a str> {
    spec.strip_prefix(prefix)?.strip_prefix(':')?.strip_prefix(key)?.strip_prefix('=')
}

fn parse_base(field: &FieldSpec, spec: &str, n: Option<usize>, limits: &Limits) -> anyhow::Result<LinearCode> {
    let need_n = || n.ok_or_else(|| anyhow!("--base {spec} needs --n"));
    let base = if let Some(r) = param(spec, "hamming", "r") {
        let r: usize = r.parse().with_context(|| format!("bad Hamming redundancy in {spec:?}"))?;
        LinearCode::hamming(field, r, limits)?
    } else if spec == "full" {
        LinearCode::full_space(field, need_n()?)
    } else if spec == "zero" {
        LinearCode::zero_code(field, need_n()?)
    } else if let Some(path) = spec.strip_prefix("json:") {
        let dto: LinearCodeJson = serde_json::from_str(&read(Path::new(path))?).map_err(|e| Error::Parse(e.to_string()))?;
        let code = dto.to_code()?;
        if code.field() != field {
            bail!("base code in {path} is over GF({}), expected GF({})", code.field().order(), field.order());
        }
        code
    } else {
        bail!("unknown base {spec:?}; expected hamming:r=R, full, zero or json:PATH");
    };
    if let Some(n) = n {
        if n != base.len() {
            bail!("--n {n} does not match the base code length {}", base.len());
        }
    }
    Ok(base)
}

fn parse_f(field: &FieldSpec, n: usize, spec: &str, seed: u64) -> anyhow::Result<(QuadraticForm, Option<u64>)> {
    if spec == "zero" {
        return Ok((QuadraticForm::zero(field, n), None));
    }
    if spec == "random" || spec.starts_with("random:") {
        let s = match param(spec, "random", "seed") {
            Some(s) => s.parse().with_context(|| format!("bad seed in {spec:?}"))?,
            None if spec == "random" => seed,
            None => bail!("expected random or random:seed=S, got {spec:?}"),
        };
        return Ok((QuadraticForm::random(field, n, s, true), Some(s)));
    }
    if let Some(path) = spec.strip_prefix("json:") {
        let dto: QuadraticJson = serde_json::from_str(&read(Path::new(path))?).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok((dto.to_form(field)?, None));
    }
    Ok((expr::parse(field, n, spec)?, None))
}

fn load_spec(path: &Path) -> anyhow::Result<VsCode> {
    format::parse_code_spec(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

pub fn construct(ctx: &Context, a: ConstructArgs) -> anyhow::Result<Outcome> {
    let field = FieldSpec::with_order(a.q)?;
    let base = parse_base(&field, &a.base, a.n, &ctx.limits)?;
    let (f, f_seed) = parse_f(&field, base.len(), &a.f, ctx.seed)?;
    if a.propelinear && !f.constant().is_zero() {
        bail!("--propelinear requires f(0) = 0, got constant term {}", f.constant());
    }
    let code = VsCode::new(base, f)?;
    let mut report = format::code_spec_to_json(&code);
    let obj = report.as_object_mut().expect("spec is an object");
    obj.insert("length".into(), json!(code.len()));
    obj.insert("size".into(), big_json(&code.size()));
    obj.insert("expression".into(), json!(expr::render(code.switching_function())));
    obj.insert("seed".into(), json!(f_seed.unwrap_or(ctx.seed)));
    if let Some(p) = &a.spec_out {
        write_atomic(p, &pretty(&report))?;
    }
    let mut stdout = None;
    if a.enumerate || a.words_out.is_some() {
        let words: Vec<Word> = code.enumerate(&ctx.limits)?.collect();
        let text = format::write_codewords(code.field(), &words);
        match &a.words_out {
            Some(p) => write_atomic(p, &text)?,
            None => stdout = Some(text),
        }
    }
    Ok(Outcome { report, ok: true, stdout })
}

pub fn verify(ctx: &Context, a: VerifyArgs) -> anyhow::Result<Outcome> {
    let code = load_spec(&a.spec)?;
    let (perfect, propelinear) = if a.perfect || a.propelinear { (a.perfect, a.propelinear) } else { (true, true) };
    let mut report = Map::new();
    report.insert("length".into(), json!(code.len()));
    report.insert("size".into(), big_json(&code.size()));
    report.insert("seed".into(), json!(ctx.seed));
    let mut ok = true;
    if perfect {
        let sampled = VerifyMode::Sampled { trials: a.trials, seed: ctx.seed };
        let mode = match a.mode {
            Mode::Exhaustive => VerifyMode::Exhaustive,
            Mode::Sampled => sampled,
            Mode::Auto => {
                let space = (code.field().order() as u64).checked_pow(code.len() as u32);
                if space.is_some_and(|s| s <= ctx.limits.enumeration) {
                    VerifyMode::Exhaustive
                } else {
                    sampled
                }
            }
        };
        let r = code.verify_perfect(mode, &ctx.limits)?;
        ok &= r.verdict;
        report.insert("perfect".into(), serde_json::to_value(r)?);
    }
    if propelinear {
        let c = certify_propelinear(&code, &ctx.limits, ctx.seed)?;
        ok &= c.is_propelinear();
        let mut v = serde_json::to_value(&c)?;
        v["verdict"] = json!(c.is_propelinear());
        report.insert("propelinear".into(), v);
    }
    Ok(Outcome { report: Value::Object(report), ok, stdout: None })
}

/// Parses `W^E*W*…` into `(word, exponent)` factors.
fn parse_product(field: &FieldSpec, text: &str) -> anyhow::Result<Vec<(Word, i64)>> {
    text.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (w, e) = match factor.split_once('^') {
                Some((w, e)) => (w, e.trim().parse().with_context(|| format!("bad exponent in {factor:?}"))?),
                None => (factor, 1),
            };
            Ok((Word::parse(field, w.trim())?, e))
        })
        .collect()
}

pub fn group(ctx: &Context, a: GroupArgs) -> anyhow::Result<Outcome> {
    let code = load_spec(&a.spec)?;
    let field = code.field();
    let g = build_group(&code, &ctx.limits)?;
    let fp = fingerprint(&g.table);
    let mut report = serde_json::to_value(&fp)?;
    report["matches"] = json!(match_catalog(&fp));
    let p = field.characteristic() as u64;
    report["ordersWithinPSquared"] = json!(g.orders_within_square_of_characteristic(p));
    let index = |w: &Word| g.index_of(w).ok_or_else(|| anyhow!("{w} is not a codeword"));

    let mut elements = Vec::new();
    for text in &a.elements {
        let w = Word::parse(field, text)?;
        let i = index(&w)?;
        elements.push(json!({
            "word": w,
            "order": g.table.element_order(i),
            "perm": g.elements[i].perm.cycle_notation(),
        }));
    }
    let mut ok = true;
    let mut relations = Vec::new();
    for text in &a.relations {
        let factors = parse_product(field, text)?;
        let word = factors.iter().map(|(w, e)| Ok((index(w)?, *e))).collect::<anyhow::Result<Vec<_>>>()?;
        let holds = g.table.check_relation(&word)?;
        ok &= holds;
        relations.push(json!({"relation": text, "holds": holds}));
    }
    report["elements"] = json!(elements);
    report["relations"] = json!(relations);
    report["seed"] = json!(ctx.seed);
    Ok(Outcome { report, ok, stdout: None })
}

pub fn count_quadratics(ctx: &Context, a: CountArgs) -> anyhow::Result<Outcome> {
    let field = FieldSpec::with_order(a.q)?;
    let closed = quadratic::count_quadratics(&field, a.m);
    let mut report = json!({"q": a.q, "m": a.m, "closedForm": big_json(&closed), "seed": ctx.seed});
    let mut ok = true;
    if a.confirm {
        let distinct = count_distinct_functions(&field, a.m, &ctx.limits)?;
        ok = u64::try_from(&closed).ok() == Some(distinct);
        report["distinct"] = json!(distinct);
        report["verdict"] = json!(ok);
    }
    Ok(Outcome { report, ok, stdout: None })
}

pub fn extract_f(ctx: &Context, a: ExtractArgs) -> anyhow::Result<Outcome> {
    let (base, expected) = match &a.spec {
        Some(p) => {
            let code = load_spec(p)?;
            (code.base().clone(), Some(code.switching_function().clone()))
        }
        None => {
            let field = FieldSpec::with_order(a.q)?;
            let spec = a.base.as_deref().ok_or_else(|| anyhow!("extract-f needs --spec or --base"))?;
            (parse_base(&field, spec, a.n, &ctx.limits)?, None)
        }
    };
    let field = base.field().clone();
    let words = format::parse_codewords(&field, &read(&a.words)?, None)?;
    let mut report = json!({"words": words.len(), "seed": ctx.seed});
    let table = match reconstruct_f(&words, &base) {
        Ok(t) => t,
        Err(Error::Inconsistent(msg)) => {
            report["consistent"] = json!(false);
            report["error"] = json!(msg);
            return Ok(Outcome { report, ok: false, stdout: None });
        }
        Err(e) => return Err(e.into()),
    };
    let mut ok = true;
    report["consistent"] = json!(true);
    report["complete"] = json!(base.size() == Some(table.len() as u64));
    if let Some(f) = &expected {
        let agrees = table.iter().all(|(c, v)| f.eval(c).is_ok_and(|x| x == *v));
        report["matchesSpec"] = json!(agrees);
        ok &= agrees;
    }
    let t: Map<String, Value> = table.iter().map(|(c, v)| (c.to_digits(&field), json!(v.index()))).collect();
    report["table"] = Value::Object(t);
    Ok(Outcome { report, ok, stdout: None })
}

pub fn equivalence(ctx: &Context, a: EquivalenceArgs) -> anyhow::Result<Outcome> {
    let field = FieldSpec::with_order(a.q)?;
    let wa = format::parse_codewords(&field, &read(&a.a)?, None)?;
    let wb = format::parse_codewords(&field, &read(&a.b)?, None)?;
    let n = wa.first().or(wb.first()).map_or(0, Word::len);
    let found = exact_equivalence(&wa, &wb, &field, n, &ctx.limits)?;
    let report = json!({
        "length": n,
        "equivalent": found.is_some(),
        "witness": found,
        "seed": ctx.seed,
    });
    Ok(Outcome { report, ok: found.is_some(), stdout: None })
}
