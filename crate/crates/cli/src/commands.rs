use std::fs;

use num_traits::Zero;

use rht_core::blowup::{
    blowup_betti as blowup_profile, lemma1_base, lemma1_check, lemma2_check_scaled,
    massey_survives_connected_sum, projectivization_report, projectivize as build_projectivization,
    LemmaTarget,
};
use rht_core::cohom::{class_coords, ring_table};
use rht_core::massey::{formality_scan as scan, triple_massey};
use rht_core::models::{abelian, chevalley_eilenberg, cpn, heisenberg, kodaira_thurston, point, vn_model, LieAlgebra};
use rht_core::qlin::{format_rational, parse_rational};
use rht_core::symp::{
    hard_lefschetz, harmonic_report, omega_standard, symplectic_report, FormalCpn, MathieuEvidence,
    SymplecticForm,
};
use rht_core::{betti_profile, cup as cup_product, CohomClass, Dga, Element, Error};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Family, ModelArgs, Target};

pub const CAP_ENV: &str = "RHT_MAX_DEGREE";

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_parse_error() => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    pub fn report(&self) -> Value {
        match self {
            CliError::Core(e) => {
                let mut v = json!({ "kind": e.kind(), "message": e.to_string() });
                if let Error::Syntax { line, column, .. } = e {
                    v["line"] = json!(line);
                    v["column"] = json!(column);
                }
                v
            }
            CliError::Usage(m) => json!({ "kind": "UsageError", "message": m }),
            CliError::Io(m) => json!({ "kind": "IoError", "message": m }),
        }
    }
}

type CliResult<T = Value> = Result<T, CliError>;

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Reads the degree-cap override from the environment.
pub fn cap_override() -> CliResult<Option<u32>> {
    match std::env::var(CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a nonnegative integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--family {family} requires {flag}")))
}

fn load_file(path: &std::path::Path) -> CliResult<Dga> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    if raw.get("brackets").is_some() {
        let l = LieAlgebra::from_json(&text)?;
        Ok(chevalley_eilenberg(&l)?)
    } else {
        Ok(Dga::from_json(&text)?)
    }
}

pub fn load(args: &ModelArgs, cap: Option<u32>) -> CliResult<Dga> {
    let dga = match (args.family, &args.from_file) {
        (_, Some(path)) => load_file(path)?,
        (Some(Family::Heisenberg), None) => chevalley_eilenberg(&heisenberg())?,
        (Some(Family::KodairaThurston), None) => kodaira_thurston(),
        (Some(Family::Vn), None) => vn_model(need(args.n, "--n", "vn")?)?,
        (Some(Family::Abelian), None) => abelian(need(args.n, "--n", "abelian")?),
        (Some(Family::Cpn), None) => cpn(need(args.m, "--m", "cpn")?)?,
        (Some(Family::Point), None) => point(),
        (None, None) => {
            return Err(CliError::Usage("select a model with --family or --from-file".into()))
        }
    };
    Ok(match cap {
        Some(c) => dga.with_cap(c),
        None => dga,
    })
}

fn parse_class(dga: &Dga, text: &str) -> CliResult<CohomClass> {
    let u = dga.parse(text)?;
    let degree = u
        .degree()
        .ok_or(CliError::Core(Error::NotHomogeneous { expected: 0 }))?;
    Ok(CohomClass {
        degree,
        representative: u,
    })
}

fn parse_list(dga: &Dga, items: &[String]) -> CliResult<Vec<Element>> {
    items.iter().map(|s| Ok(dga.parse(s.trim())?)).collect()
}

pub fn model(args: &ModelArgs, cap: Option<u32>, validate: bool) -> CliResult {
    let dga = load(args, cap)?;
    let file = to_value(dga.to_file());
    if validate {
        Ok(json!({ "model": file, "validation": to_value(dga.validate()) }))
    } else {
        Ok(file)
    }
}

fn degree_bound(dga: &Dga, requested: Option<u32>) -> CliResult<u32> {
    match requested {
        Some(d) if d > dga.degree_cap() => Err(Error::CapExceeded {
            degree: d,
            cap: dga.degree_cap(),
        }
        .into()),
        Some(d) => Ok(d),
        None => Ok(dga.degree_cap()),
    }
}

pub fn betti(args: &ModelArgs, cap: Option<u32>, max_degree: Option<u32>, ring: bool) -> CliResult {
    let dga = load(args, cap)?;
    let top = degree_bound(&dga, max_degree)?;
    if ring {
        return Ok(to_value(ring_table(&dga, top)?));
    }
    Ok(json!({ "betti": betti_profile(&dga, top)? }))
}

pub fn cup(args: &ModelArgs, cap: Option<u32>, a: &str, b: &str) -> CliResult {
    let dga = load(args, cap)?;
    let (ca, cb) = (parse_class(&dga, a)?, parse_class(&dga, b)?);
    let prod = cup_product(&dga, &ca, &cb)?;
    let coords: Vec<String> = class_coords(&dga, &prod)?.iter().map(format_rational).collect();
    Ok(json!({
        "degree": prod.degree,
        "representative": prod.representative.to_string(),
        "zero": prod.is_zero(),
        "class": coords,
    }))
}

pub fn massey(args: &ModelArgs, cap: Option<u32>, a: &str, b: &str, c: &str) -> CliResult {
    let dga = load(args, cap)?;
    let (ca, cb, cc) = (parse_class(&dga, a)?, parse_class(&dga, b)?, parse_class(&dga, c)?);
    Ok(to_value(triple_massey(&dga, &ca, &cb, &cc)?.report()))
}

pub fn formality_scan(args: &ModelArgs, cap: Option<u32>, max_degree: Option<u32>) -> CliResult {
    let dga = load(args, cap)?;
    let top = degree_bound(&dga, max_degree)?;
    Ok(to_value(scan(&dga, top)?.report()))
}

fn mathieu(e: MathieuEvidence) -> Value {
    json!({ "lefschetz": e.lefschetz, "harmonic": e.harmonic, "agree": e.agrees() })
}

fn formal_cpn_report(
    dga: &Dga,
    m: usize,
    form: Option<&str>,
    lefschetz: bool,
    harmonic: bool,
) -> CliResult {
    let w = parse_class(dga, form.unwrap_or("x"))?;
    let x = dga.generator("x")?;
    let (xm, _) = x.terms().next().expect("x is a monomial");
    let c = w.representative.coefficient(xm);
    if w.degree != 2 || c.is_zero() || w.representative != x.scale(&c) {
        return Err(Error::NotAForm("on cpn the form must be a nonzero multiple of x".into()).into());
    }
    let mut out = json!({
        "form": w.representative.to_string(),
        "closed": true,
        "nondegenerate": true,
        "integral": w.representative.terms().all(|(_, c)| c.is_integer()),
    });
    let l = hard_lefschetz(dga, &w, m as u32)?;
    let h = harmonic_report(&FormalCpn { m: m as u32 })?;
    if lefschetz {
        out["lefschetz"] = to_value(&l);
    }
    if harmonic {
        out["harmonic_classes"] = to_value(&h);
    }
    if lefschetz && harmonic {
        out["mathieu"] = mathieu(MathieuEvidence {
            lefschetz: l.passes,
            harmonic: h.all_representable,
        });
    }
    Ok(out)
}

pub fn symplectic(
    args: &ModelArgs,
    cap: Option<u32>,
    form: Option<&str>,
    standard_omega: bool,
    lefschetz: bool,
    harmonic: bool,
) -> CliResult {
    let f = if standard_omega {
        let m = args
            .m
            .ok_or_else(|| CliError::Usage("--standard-omega requires --m".into()))?;
        omega_standard(m)?
    } else {
        let dga = load(args, cap)?;
        if args.family == Some(Family::Cpn) {
            let m = need(args.m, "--m", "cpn")?;
            return formal_cpn_report(&dga, m, form, lefschetz, harmonic);
        }
        let form = form.ok_or_else(|| CliError::Usage("pass --form EXPR or --standard-omega".into()))?;
        SymplecticForm::parse(&dga, form)?
    };
    let report = symplectic_report(&f, lefschetz, harmonic)?;
    let mut out = to_value(&report);
    if let (Some(l), Some(h)) = (&report.lefschetz, &report.harmonic_classes) {
        out["mathieu"] = mathieu(MathieuEvidence {
            lefschetz: l.passes,
            harmonic: h.all_representable,
        });
    }
    Ok(out)
}

pub fn projectivize(
    args: &ModelArgs,
    cap: Option<u32>,
    k: u32,
    chern: &[String],
    max_degree: Option<u32>,
) -> CliResult {
    let base = load(args, cap)?;
    let chern = parse_list(&base, chern)?;
    let p = build_projectivization(&base, k, &chern)?;
    let top = degree_bound(&p.total, max_degree)?;
    Ok(to_value(projectivization_report(&p, top)?))
}

fn manifold_dimension(args: &ModelArgs, dga: &Dga) -> CliResult<u32> {
    if !dga.algebra().has_even_generators() {
        return Ok(dga.algebra().top_exterior_degree());
    }
    match args.family {
        Some(Family::Cpn) => Ok(2 * need(args.m, "--m", "cpn")? as u32),
        _ => Err(CliError::Usage(
            "cannot infer the dimension of a model with even generators".into(),
        )),
    }
}

pub fn blowup_betti(args: &ModelArgs, cap: Option<u32>, n: u32) -> CliResult {
    let dga = load(args, cap)?;
    let dim = manifold_dimension(args, &dga)?;
    let dga = if dga.degree_cap() < dim { dga.with_cap(dim) } else { dga };
    let y = betti_profile(&dga, dim)?;
    Ok(to_value(blowup_profile(n, &y)?))
}

pub fn lemma(
    which: u32,
    m: Option<usize>,
    target: Option<Target>,
    k: u32,
    chern: &[String],
    scale: Option<&str>,
) -> CliResult {
    let check = if which == 1 {
        let m = m.ok_or_else(|| CliError::Usage("--which 1 requires --m".into()))?;
        let base = lemma1_base(m)?;
        lemma1_check(m, k, &parse_list(&base, chern)?)?
    } else {
        let target = match target {
            Some(Target::Kt) => LemmaTarget::KodairaThurston,
            Some(Target::M4) => LemmaTarget::M4,
            None => return Err(CliError::Usage("--which 2 requires --target".into())),
        };
        let scale = match scale {
            Some(s) => parse_rational(s)
                .ok_or_else(|| CliError::Usage(format!("--scale: not a rational number: {s}")))?,
            None => rht_core::qlin::int(1),
        };
        let chern = parse_list(&target.base(), chern)?;
        lemma2_check_scaled(target, k, &chern, &scale)?
    };
    Ok(to_value(check.report()))
}

pub fn conn_sum_survival(q: u32, dim: u32) -> Value {
    json!({ "q": q, "dim": dim, "survives": massey_survives_connected_sum(q, dim) })
}
