use std::fmt;
use std::fs;
use std::path::Path;

use chainlcd::galois::GaloisContext;
use chainlcd::gray::{
    hamming_distance, hom_distance, hom_weight_mixed, lcd_transfer, FieldCode, GrayMap, Upsilon,
};
use chainlcd::io::{parse_code, parse_field_code, parse_ring, CodeFile, ElemRepr, FieldCodeFile};
use chainlcd::linalg::RingMat;
use chainlcd::mixed::{Ambient, LcdMethod, MixedCode, MixedVec};
use chainlcd::{Error, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Common, Verb};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::CapExceeded { .. } | Error::SizeExceeded { .. }) => 2,
            CliError::Lib(Error::Invariant(_)) => 3,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub struct Report {
    pub verb: &'static str,
    pub input: Vec<String>,
    pub params: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    pub human: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "verb": self.verb,
            "input": self.input,
            "params": self.params,
            "result": self.result,
            "warnings": self.warnings,
        })
    }
}

pub fn common(verb: &Verb) -> &Common {
    match verb {
        Verb::StandardForm(c)
        | Verb::Type(c)
        | Verb::Dual(c)
        | Verb::Hull(c)
        | Verb::Lcd(c)
        | Verb::Invariant(c)
        | Verb::Core(c)
        | Verb::Res(c)
        | Verb::Trace(c)
        | Verb::Delsarte(c)
        | Verb::Weight(c)
        | Verb::Transfer(c) => c,
        Verb::Ext { common, .. } | Verb::Gray { common, .. } | Verb::Distance { common, .. } => {
            common
        }
    }
}

fn verb_name(verb: &Verb) -> &'static str {
    match verb {
        Verb::StandardForm(_) => "standard-form",
        Verb::Type(_) => "type",
        Verb::Dual(_) => "dual",
        Verb::Hull(_) => "hull",
        Verb::Lcd(_) => "lcd",
        Verb::Invariant(_) => "invariant",
        Verb::Core(_) => "core",
        Verb::Res(_) => "res",
        Verb::Trace(_) => "trace",
        Verb::Ext { .. } => "ext",
        Verb::Delsarte(_) => "delsarte",
        Verb::Gray { .. } => "gray",
        Verb::Weight(_) => "weight",
        Verb::Distance { .. } => "distance",
        Verb::Transfer(_) => "transfer",
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_code(path: &Path) -> CliResult<MixedCode> {
    Ok(parse_code(&read(path)?)?)
}

/// A field code file, if the input is one.
fn load_field_code(path: &Path) -> CliResult<Option<FieldCode>> {
    let text = read(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad JSON: {e}")))?;
    if value.get("field").is_none() {
        return Ok(None);
    }
    Ok(Some(parse_field_code(&text)?))
}

fn field_code_lines(f: &FieldCode) -> Vec<String> {
    let mut out = vec![format!(
        "[{}, {}] code over F_{}",
        f.len(),
        f.dimension(),
        f.field().order()
    )];
    out.extend(
        f.basis()
            .iter()
            .map(|r| format!("  {}", field_row_str(f, r))),
    );
    out
}

fn field_code_json(f: &FieldCode) -> Value {
    json!({
        "code": FieldCodeFile::from_code(f),
        "dimension": f.dimension(),
    })
}

fn cap(c: &Common) -> CliResult<u64> {
    if c.alpha_cap > 40 {
        return Err(CliError::Input(format!(
            "--alpha-cap {} is above 40",
            c.alpha_cap
        )));
    }
    Ok(1u64 << c.alpha_cap)
}

fn size_str(q: u32, e: u32) -> String {
    format!("{q}^{e}")
}

fn code_lines(c: &MixedCode) -> Vec<String> {
    let amb = c.ambient();
    let mut out = vec![
        format!("type {}", c.code_type()),
        format!(
            "|C| = {}",
            size_str(amb.ring().residue_order(), c.log_size())
        ),
    ];
    out.extend(c.basis().iter().map(|v| format!("  {}", amb.format_vec(v))));
    out
}

fn code_json(c: &MixedCode) -> Value {
    json!({
        "code": CodeFile::from_code(c),
        "type": c.code_type().to_string(),
        "log_size": c.log_size(),
        "residue_order": c.ambient().ring().residue_order(),
    })
}

fn mat_json(ring: &Ring, m: &RingMat) -> Value {
    json!((0..m.rows())
        .map(|i| m
            .row(i)
            .iter()
            .map(|&e| ElemRepr::from_elem(ring, e))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cardinality_warning(c: &MixedCode) -> Option<String> {
    let t = c.code_type();
    let s = c.ambient().s() as usize;
    if c.ambient().r() == c.ambient().s() || t.k.iter().all(|&k| k == 0) {
        return None;
    }
    let alt: usize =
        t.k.iter()
            .enumerate()
            .map(|(i, &k)| (s - i) * k)
            .sum::<usize>()
            + t.l
                .iter()
                .enumerate()
                .map(|(i, &l)| (s - i) * l)
                .sum::<usize>();
    Some(format!(
        "cardinality exponent uses Σ(r−t)k_t + Σ(s−t)ℓ_t = {}; the variant Σ(s−t)k_t + Σ(s−t)ℓ_t would give {alt}",
        c.log_size()
    ))
}

fn vec_json(amb: &Ambient, v: &MixedVec) -> Value {
    let g = chainlcd::io::vec_repr(amb, v);
    json!({"x": g.x[0], "y": g.y[0]})
}

fn field_row_str(f: &FieldCode, row: &[chainlcd::FieldElem]) -> String {
    let parts: Vec<String> = row
        .iter()
        .map(|&a| match ElemRepr::from_field_elem(f.field(), a) {
            ElemRepr::Int(n) => n.to_string(),
            ElemRepr::Coords(c) => format!("{c:?}"),
        })
        .collect();
    format!("({})", parts.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_yes(b: Option<bool>) -> &'static str {
    b.map_or("n/a", yes)
}

pub fn run(verb: &Verb) -> CliResult<Report> {
    let c = common(verb);
    let method: LcdMethod = c
        .method
        .parse()
        .map_err(|e: Error| CliError::Input(e.to_string()))?;
    let cap = cap(c)?;
    let mut input = vec![c.input.display().to_string()];
    let mut params = json!({"h": c.h, "method": method, "alpha_cap": c.alpha_cap, "seed": c.seed});
    let mut warnings = Vec::new();
    let mut human = Vec::new();

    let result = match verb {
        Verb::StandardForm(_) => {
            let code = load_code(&c.input)?;
            let sf = code.standard_form();
            let amb = code.ambient();
            human.push(format!("type {}", sf.code_type));
            human.extend(
                sf.standard
                    .row_vecs()
                    .iter()
                    .map(|v| format!("  {}", amb.format_vec(v))),
            );
            human.push(format!("perm_x {:?}", sf.perm_x));
            human.push(format!("perm_y {:?}", sf.perm_y));
            json!({
                "type": sf.code_type.to_string(),
                "standard": CodeFile::from_rows(amb, &sf.standard.row_vecs()).generators,
                "perm_x": sf.perm_x,
                "perm_y": sf.perm_y,
                "transform": mat_json(amb.ring(), &sf.p),
            })
        }
        Verb::Type(_) => {
            let code = load_code(&c.input)?;
            let t = code.code_type();
            let q = code.ambient().ring().residue_order();
            warnings.extend(cardinality_warning(&code));
            human.push(format!("type {t}"));
            human.push(format!("|C| = {}", size_str(q, code.log_size())));
            human.push(format!("weakly free: {}", yes(t.is_weakly_free())));
            json!({
                "type": t.to_string(),
                "alpha": t.alpha,
                "beta": t.beta,
                "k": t.k,
                "l": t.l,
                "residue_order": q,
                "log_size": code.log_size(),
                "cardinality": code.cardinality().to_string(),
                "weakly_free": t.is_weakly_free(),
            })
        }
        Verb::Dual(_) if load_field_code(&c.input)?.is_some() => {
            let d = load_field_code(&c.input)?.expect("checked").dual(c.h);
            human.extend(field_code_lines(&d));
            field_code_json(&d)
        }
        Verb::Hull(_) if load_field_code(&c.input)?.is_some() => {
            let hull = load_field_code(&c.input)?.expect("checked").hull(c.h);
            human.extend(field_code_lines(&hull));
            let mut v = field_code_json(&hull);
            v["trivial"] = json!(hull.dimension() == 0);
            v
        }
        Verb::Lcd(_) if load_field_code(&c.input)?.is_some() => {
            let fc = load_field_code(&c.input)?.expect("checked");
            let lcd = fc.is_lcd(c.h);
            let hull_dim = fc.hull(c.h).dimension();
            if lcd != (hull_dim == 0) {
                return Err(CliError::Lib(Error::Invariant(
                    "Gram rank and hull disagree".into(),
                )));
            }
            human.push(format!(
                "h = {}: {}",
                c.h,
                if lcd { "LCD" } else { "not LCD" }
            ));
            human.push(format!("hull dimension: {hull_dim}"));
            json!({"h": c.h, "lcd": lcd, "hull_dimension": hull_dim})
        }
        Verb::Weight(_) if load_field_code(&c.input)?.is_some() => {
            let fc = load_field_code(&c.input)?.expect("checked");
            let dist = fc.weight_distribution(cap)?;
            let pairs: Vec<(usize, u64)> = dist
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, n)| n > 0)
                .collect();
            let min = pairs.iter().map(|&(w, _)| w).find(|&w| w > 0);
            for (w, n) in &pairs {
                human.push(format!("weight {w}: {n}"));
            }
            human.push(format!(
                "minimum Hamming weight: {}",
                min.map_or("none".into(), |m| m.to_string())
            ));
            json!({
                "distribution": pairs.iter().map(|(w, n)| json!([w, n])).collect::<Vec<_>>(),
                "min_weight": min,
            })
        }
        Verb::Dual(_) => {
            let code = load_code(&c.input)?;
            let d = code.dual(c.h);
            human.extend(code_lines(&d));
            code_json(&d)
        }
        Verb::Hull(_) => {
            let code = load_code(&c.input)?;
            let hull = code.hull(c.h);
            human.extend(code_lines(&hull));
            let mut v = code_json(&hull);
            v["trivial"] = json!(hull.log_size() == 0);
            v
        }
        Verb::Lcd(_) => {
            let code = load_code(&c.input)?;
            let rep = code.is_lcd(c.h, method, cap)?;
            human.push(format!(
                "h = {}: {}",
                c.h,
                if rep.lcd { "LCD" } else { "not LCD" }
            ));
            human.push(format!("oracle: {}", opt_yes(rep.oracle)));
            human.push(format!("structural: {}", opt_yes(rep.structural)));
            if let Some(a) = rep.agree {
                human.push(format!("methods agree: {}", yes(a)));
            }
            if rep.fallback {
                human.push("structural criterion not applicable; verdict from the hull".into());
            }
            if rep.agree == Some(false) {
                return Err(CliError::Lib(Error::Invariant(
                    "oracle and structural verdicts disagree".into(),
                )));
            }
            let ring = code.ambient().ring();
            let witness = rep.witness.as_ref().map(|w| {
                w.iter()
                    .map(|row| {
                        row.iter()
                            .map(|&e| ElemRepr::from_elem(ring, e))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
            });
            json!({
                "h": rep.h,
                "lcd": rep.lcd,
                "weakly_free": rep.weakly_free,
                "hypothesis": rep.hypothesis,
                "structural": rep.structural,
                "oracle": rep.oracle,
                "fallback": rep.fallback,
                "agree": rep.agree,
                "witness": witness,
                "witness_ok": rep.witness_ok,
            })
        }
        Verb::Invariant(_) => {
            let code = load_code(&c.input)?;
            let ctx = GaloisContext::new(code.ambient())?;
            let rep = ctx.dual_report(&code)?;
            let sub = ctx.subring_generator_matrix(&code)?;
            human.push(format!("invariant: {}", yes(rep.invariant)));
            for (h, eq) in rep.equal_to_euclidean.iter().enumerate() {
                human.push(format!("C^⊥{h} = C^⊥0: {}", yes(*eq)));
            }
            if let Some(g) = &sub {
                human.push("subring generator matrix:".into());
                human.extend(
                    g.row_vecs()
                        .iter()
                        .map(|v| format!("  {}", ctx.subring_ambient().format_vec(v))),
                );
            }
            json!({
                "invariant": rep.invariant,
                "dual_equal_to_euclidean": rep.equal_to_euclidean,
                "subring_generators": sub.map(|g| CodeFile::from_rows(ctx.subring_ambient(), &g.row_vecs())),
            })
        }
        Verb::Core(_) | Verb::Res(_) | Verb::Trace(_) => {
            let code = load_code(&c.input)?;
            let ctx = GaloisContext::new(code.ambient())?;
            let out = match verb {
                Verb::Core(_) => ctx.g_core(&code)?,
                Verb::Res(_) => ctx.res_subcode(&code)?,
                _ => ctx.trace_code(&code)?,
            };
            human.extend(code_lines(&out));
            code_json(&out)
        }
        Verb::Ext { over, .. } => {
            input.push(over.display().to_string());
            params["over"] = json!(over.display().to_string());
            let ring = parse_ring(&read(over)?)?;
            let d = load_code(&c.input)?;
            let da = d.ambient();
            let amb = Ambient::new(ring.spec().clone(), da.r(), da.alpha(), da.beta())?;
            let ctx = GaloisContext::new(&amb)?;
            if da.ring() != ctx.subring_ambient().ring() {
                return Err(CliError::Input(format!(
                    "{} is not the fixed subring of {}",
                    da.ring(),
                    amb.ring()
                )));
            }
            let d = MixedCode::from_vecs(ctx.subring_ambient(), &d.basis())?;
            let out = ctx.ext_code(&d)?;
            human.extend(code_lines(&out));
            code_json(&out)
        }
        Verb::Delsarte(_) => {
            let code = load_code(&c.input)?;
            let ctx = GaloisContext::new(code.ambient())?;
            let holds = ctx.delsarte_check(&code, c.h)?;
            human.push(format!("Tr(C^⊥{}) = Res(C)^⊥0: {}", c.h, yes(holds)));
            if !holds {
                return Err(CliError::Lib(Error::Invariant(
                    "trace of the dual differs from the dual of the subring subcode".into(),
                )));
            }
            json!({"h": c.h, "holds": holds})
        }
        Verb::Gray {
            via_upsilon,
            samples,
            ..
        } => {
            params["via_upsilon"] = json!(via_upsilon);
            params["samples"] = json!(samples);
            let code = load_code(&c.input)?;
            let code = if *via_upsilon {
                upsilon_span(&code, cap)?
            } else {
                code
            };
            let gray = GrayMap::new(code.ambient())?;
            let img = gray.image(&code, cap)?;
            let words = code.enumerate(cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let mut isometry = true;
            for _ in 0..*samples {
                let (u, v) = (
                    &words[rng.gen_range(0..words.len())],
                    &words[rng.gen_range(0..words.len())],
                );
                isometry &= hom_distance(code.ambient(), u, v)
                    == hamming_distance(&gray.map(u), &gray.map(v)) as u64;
            }
            if !isometry {
                return Err(CliError::Lib(Error::Invariant(
                    "Gray map is not an isometry on the sampled pairs".into(),
                )));
            }
            let span = img.span();
            human.push(format!(
                "length {}, {} words, linear: {}",
                img.len(),
                img.words().len(),
                yes(img.is_linear())
            ));
            if img.is_linear() {
                human.push(format!("dimension {}", span.dimension()));
                human.extend(
                    span.basis()
                        .iter()
                        .map(|r| format!("  {}", field_row_str(span, r))),
                );
            }
            human.push(format!("isometry on {samples} sampled pairs: yes"));
            json!({
                "image": FieldCodeFile::from_gray_image(&img),
                "words": img.words().len(),
                "linear": img.is_linear(),
                "isometry_pairs": samples,
                "isometry_ok": isometry,
            })
        }
        Verb::Weight(_) => {
            let code = load_code(&c.input)?;
            let mut dist = std::collections::BTreeMap::new();
            for w in code.enumerate(cap)? {
                *dist
                    .entry(hom_weight_mixed(code.ambient(), &w))
                    .or_insert(0u64) += 1;
            }
            let min = dist.keys().copied().find(|&w| w > 0);
            for (w, n) in &dist {
                human.push(format!("weight {w}: {n}"));
            }
            human.push(format!(
                "minimum homogeneous weight: {}",
                min.map_or("none".into(), |m| m.to_string())
            ));
            json!({
                "distribution": dist.iter().map(|(w, n)| json!([w, n])).collect::<Vec<_>>(),
                "min_weight": min,
            })
        }
        Verb::Distance {
            gray,
            dual,
            via_upsilon,
            ..
        } => {
            params["gray"] = json!(gray);
            params["dual"] = json!(dual);
            params["via_upsilon"] = json!(via_upsilon);
            let text = read(&c.input)?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad JSON: {e}")))?;
            let (d, extra) = if value.get("field").is_some() {
                let fc = parse_field_code(&text)?;
                let target = if *dual { fc.dual(c.h) } else { fc };
                (
                    target.min_distance(cap.max(chainlcd::gray::FIELD_SWEEP_CAP))?,
                    None,
                )
            } else {
                let code = load_code(&c.input)?;
                let code = if *via_upsilon {
                    upsilon_span(&code, cap)?
                } else {
                    code
                };
                if *gray {
                    let gm = GrayMap::new(code.ambient())?;
                    let img = gm.image(&code, cap)?;
                    if *dual {
                        let fc = img.as_field_code().ok_or_else(|| {
                            CliError::Input(
                                "the Gray image is not linear; its dual is not defined here".into(),
                            )
                        })?;
                        let d = fc
                            .dual(c.h)
                            .min_distance(cap.max(chainlcd::gray::FIELD_SWEEP_CAP))?;
                        let of_dual = gm.image(&code.dual(c.h), cap)?.min_distance(cap)?;
                        if d != of_dual {
                            warnings.push(format!(
                                "minimum distance of the dual of the Gray image ({}) differs from that of the Gray image of the dual ({})",
                                opt_num(d),
                                opt_num(of_dual)
                            ));
                        }
                        (d, Some(of_dual))
                    } else {
                        (img.min_distance(cap)?, None)
                    }
                } else {
                    let target = if *dual { code.dual(c.h) } else { code };
                    let min = target
                        .enumerate(cap)?
                        .iter()
                        .map(|w| hom_weight_mixed(target.ambient(), w))
                        .filter(|&w| w > 0)
                        .min();
                    (min.map(|m| m as usize), None)
                }
            };
            human.push(format!("minimum distance: {}", opt_num(d)));
            if let Some(od) = extra {
                human.push(format!(
                    "minimum distance of the Gray image of the dual: {}",
                    opt_num(od)
                ));
            }
            json!({"distance": d, "gray_of_dual_distance": extra.flatten()})
        }
        Verb::Transfer(_) => {
            let code = load_code(&c.input)?;
            let rep = lcd_transfer(&code, cap)?;
            if rep.verdicts_consistent == Some(false) {
                return Err(CliError::Lib(Error::Invariant(
                    "LCD verdicts disagree although D_C = {0}".into(),
                )));
            }
            human.push(format!("q = {}", rep.q));
            human.push(format!("D_C = {{0}}: {}", yes(rep.applicable)));
            human.push(format!("source LCD: {}", yes(rep.source_lcd)));
            human.push(format!(
                "Υ_q(C) linear: {}, LCD: {}",
                yes(rep.upsilon_linear),
                yes(rep.upsilon_lcd)
            ));
            human.push(format!("binary image LCD: {}", opt_yes(rep.binary_lcd)));
            human.push(format!(
                "punctured X code LCD: {}",
                opt_yes(rep.ternary_lcd)
            ));
            human.push(format!(
                "Υ_q(C^⊥) = Υ_q(C)^⊥: {}",
                yes(rep.upsilon_dual_commutes)
            ));
            human.push(format!(
                "Φ(Υ(C^⊥)) = Φ(Υ(C))^⊥: {}",
                opt_yes(rep.gray_dual_commutes)
            ));
            human.push(format!(
                "verdicts consistent: {}",
                opt_yes(rep.verdicts_consistent)
            ));
            let ups = Upsilon::for_ambient(code.ambient())?;
            let gray = GrayMap::new(ups.target())?;
            let gens = FieldCode::new(
                gray.field().clone(),
                gray.image_len(),
                rep.gray_generators.clone(),
            )?;
            json!({
                "q": rep.q,
                "d_set": rep.d_set.iter().map(|v| vec_json(code.ambient(), v)).collect::<Vec<_>>(),
                "applicable": rep.applicable,
                "source_lcd": rep.source_lcd,
                "upsilon_linear": rep.upsilon_linear,
                "upsilon_lcd": rep.upsilon_lcd,
                "gray_linear": rep.gray_linear,
                "binary_lcd": rep.binary_lcd,
                "ternary_lcd": rep.ternary_lcd,
                "upsilon_dual_commutes": rep.upsilon_dual_commutes,
                "gray_dual_commutes": rep.gray_dual_commutes,
                "verdicts_consistent": rep.verdicts_consistent,
                "gray_code": FieldCodeFile::from_code(&gens),
            })
        }
    };

    Ok(Report {
        verb: verb_name(verb),
        input,
        params,
        result,
        warnings,
        human,
    })
}

fn opt_num(d: Option<usize>) -> String {
    d.map_or("none".into(), |d| d.to_string())
}

fn upsilon_span(code: &MixedCode, cap: u64) -> CliResult<MixedCode> {
    let ups = Upsilon::for_ambient(code.ambient())?;
    let (words, span) = ups.image(code, cap)?;
    if span.cardinality() != words.len() as u128 {
        return Err(CliError::Input(
            "the image under the digit map is not linear".into(),
        ));
    }
    Ok(span)
}
