use std::fs;
use std::path::Path;

use mpf_core::cantor::{self, Base3Expansion};
use mpf_core::metric::{self, blowup_phi, ultrametric_rho, IncreasingWitness};
use mpf_core::rational::int;
use mpf_core::{
    amenable_continuation_precheck, amenable_isotone_continuation, parse_rational, subadditive_envelope,
    sup_continuation, Check, Combiner, Error, FiniteMetricSpace, GridFunction, PointN, ProductMatrix,
    ProductSpec, Rational, SampledFunction,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::RunReport;
use crate::CliError;

type Outcome = Result<RunReport, CliError>;

fn r(x: &Rational) -> Value {
    Value::String(mpf_core::format_rational(x))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn rational_arg(text: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(text)?)
}

fn probes(texts: &[String]) -> Result<Vec<PointN>, CliError> {
    texts.iter().map(|t| Ok(PointN::parse(t)?)).collect()
}

fn load_function(report: &mut RunReport, path: &Path) -> Result<SampledFunction, CliError> {
    let text = report.read_input(path)?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    Ok(if is_csv {
        SampledFunction::from_csv(&text)?
    } else {
        SampledFunction::from_json(&text)?
    })
}

fn load_space(report: &mut RunReport, path: &Path) -> Result<FiniteMetricSpace, CliError> {
    Ok(FiniteMetricSpace::from_json(&report.read_input(path)?)?)
}

fn load_grid(report: &mut RunReport, path: &Path) -> Result<GridFunction, CliError> {
    Ok(GridFunction::from_json(&report.read_input(path)?)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalSetFile {
    Plain(Vec<String>),
    Wrapped { values: Vec<String> },
}

/// A JSON array of rational strings, or `{"values": [...]}`.
fn load_set(report: &mut RunReport, path: &Path) -> Result<Vec<Rational>, CliError> {
    let text = report.read_input(path)?;
    let doc: RationalSetFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let values = match doc {
        RationalSetFile::Plain(v) | RationalSetFile::Wrapped { values: v } => v,
    };
    values.iter().map(|t| rational_arg(t)).collect()
}

pub fn check(path: &Path) -> Outcome {
    let mut report = RunReport::new("check");
    let f = load_function(&mut report, path)?;
    let isotone = f.check_isotone();
    let detail = match &isotone {
        Check::Holds => Value::Null,
        Check::Fails((lower, upper)) => json!({ "lower": lower, "upper": upper }),
    };
    report.push("isotone", isotone.holds(), detail);
    match f.check_amenable() {
        Ok(Check::Holds) => report.push("amenable", true, Value::Null),
        Ok(Check::Fails(p)) => report.push("amenable", false, json!({ "point": p })),
        Err(Error::MissingOrigin) => {
            report.push("amenable", false, json!({ "reason": Error::MissingOrigin.to_string() }))
        }
        Err(e) => return Err(e.into()),
    }
    if isotone.holds() {
        let sub = f.check_subadditive()?;
        report.push("subadditive", sub.holds(), to_value(&sub.witness()));
    } else {
        report.push(
            "subadditive",
            false,
            json!({ "reason": "subadditivity is decided for isotone functions only" }),
        );
    }
    Ok(report)
}

pub fn extend_sup(path: &Path, probe_texts: &[String]) -> Outcome {
    let mut report = RunReport::new("extend-sup");
    let f = load_function(&mut report, path)?;
    for y in probes(probe_texts)? {
        let v = sup_continuation(&f, &y)?;
        report.push("sup_continuation", true, json!({ "probe": y, "value": r(&v) }));
    }
    Ok(report)
}

pub fn extend_amenable(path: &Path, probe_texts: &[String]) -> Outcome {
    let mut report = RunReport::new("extend-amenable");
    let f = load_function(&mut report, path)?;
    let pre = amenable_continuation_precheck(&f)?;
    report.push("precheck", pre.passed, to_value(&pre));
    if pre.passed {
        for y in probes(probe_texts)? {
            let v = amenable_isotone_continuation(&f, &y)?;
            report.push("amenable_continuation", true, json!({ "probe": y, "value": r(&v) }));
        }
    }
    Ok(report)
}

pub fn envelope(path: &Path, probe_texts: &[String], c: &str) -> Outcome {
    let mut report = RunReport::new("envelope");
    let f = load_function(&mut report, path)?;
    let c = rational_arg(c)?;
    for y in probes(probe_texts)? {
        let (v, cert) = subadditive_envelope(&f, &y, &c)?;
        report.push(
            "envelope",
            cert.verify(),
            json!({ "probe": y, "value": r(&v), "certificate": cert }),
        );
    }
    Ok(report)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Space { dist: Vec<Vec<String>> },
    Bare(Vec<Vec<String>>),
}

pub fn verify_metric(path: &Path) -> Outcome {
    let mut report = RunReport::new("verify-metric");
    let text = report.read_input(path)?;
    let doc: MatrixFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let rows = match doc {
        MatrixFile::Space { dist } | MatrixFile::Bare(dist) => dist,
    };
    let m = rows
        .iter()
        .map(|row| row.iter().map(|t| rational_arg(t)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    match metric::verify_metric(&m)? {
        Check::Holds => report.push("metric", true, Value::Null),
        Check::Fails(v) => report.push("metric", false, json!({ "violation": v, "message": v.to_string() })),
    }
    Ok(report)
}

pub fn product(
    factor_paths: &[std::path::PathBuf],
    combiner: &str,
    cap: Option<&str>,
    function: Option<&Path>,
    out: Option<&Path>,
    tol: f64,
) -> Outcome {
    let mut report = RunReport::new("product");
    let factors = factor_paths
        .iter()
        .map(|p| load_space(&mut report, p))
        .collect::<Result<Vec<_>, _>>()?;
    let combiner = if combiner.eq_ignore_ascii_case("SAMPLED") {
        let path = function.ok_or_else(|| CliError::Usage("SAMPLED needs --function".into()))?;
        Combiner::Sampled(load_function(&mut report, path)?)
    } else {
        Combiner::named(combiner, cap.map(rational_arg).transpose()?)?
    };
    let spec = ProductSpec { factors, combiner };
    if spec.combiner.is_exact() {
        let m = metric::product_metric(&spec)?;
        if let Some(out) = out {
            write_file(out, &to_json_pretty(&m))?;
        }
        let verdict = metric::verify_metric(&m.dist)?;
        report.push(
            "metric",
            verdict.holds(),
            json!({ "combiner": spec.combiner.name(), "violation": verdict.witness(), "matrix": m }),
        );
    } else {
        let m = metric::product_metric_approx(&spec)?;
        if let Some(out) = out {
            write_file(out, &to_json_pretty(&m))?;
        }
        let verdict = metric::verify_metric_approx(&m, tol)?;
        report.push(
            "metric_approx",
            verdict.holds(),
            json!({ "combiner": spec.combiner.name(), "tolerance": tol, "violation": verdict.witness(), "matrix": m }),
        );
    }
    Ok(report)
}

pub fn extract(matrix: &Path, factor_paths: &[std::path::PathBuf]) -> Outcome {
    let mut report = RunReport::new("extract");
    let text = report.read_input(matrix)?;
    let m: ProductMatrix =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", matrix.display())))?;
    let factors = factor_paths
        .iter()
        .map(|p| load_space(&mut report, p))
        .collect::<Result<Vec<_>, _>>()?;
    match metric::extract_product_function(&m, &factors) {
        Ok(f) => {
            let doc: Value = serde_json::from_str(&f.to_json()).expect("valid json");
            report.push("well_defined", true, json!({ "function": doc }));
        }
        Err(Error::NotWellDefined { first, second }) => {
            report.push("well_defined", false, json!({ "pairs": [first, second] }));
        }
        Err(e) => return Err(e.into()),
    }
    let inc: Check<IncreasingWitness> = metric::is_distance_increasing(&m, &factors)?;
    report.push("distance_increasing", inc.holds(), to_value(&inc.witness()));
    Ok(report)
}

pub fn witness_unbounded(bound: &str) -> Outcome {
    let mut report = RunReport::new("witness-unbounded");
    let bound = rational_arg(bound)?;
    let (x, y) = metric::unbounded_witness(&bound)?;
    let rho = ultrametric_rho(&x, &y);
    let phi = blowup_phi(&rho)?;
    report.push(
        "exceeds_bound",
        phi > bound && x != y,
        json!({ "x": r(&x), "y": r(&y), "rho": r(&rho), "phi_of_rho": r(&phi), "bound": r(&bound) }),
    );
    Ok(report)
}

const LATTICE_NOTE: &str = "maximum over lattice pairs; a lower bound for the modulus over the whole orthant";

pub fn omega(path: &Path, eps: Option<&str>) -> Outcome {
    let mut report = RunReport::new("omega");
    let g = load_grid(&mut report, path)?;
    match eps {
        Some(text) => {
            let eps = PointN::parse(text)?;
            let v = g.modulus(&eps)?;
            report.push("modulus", true, json!({ "eps": eps, "value": r(&v), "note": LATTICE_NOTE }));
        }
        None => {
            let table: Vec<Value> = g
                .modulus_table()
                .iter()
                .map(|(p, v)| json!({ "eps": p, "value": r(v) }))
                .collect();
            report.push("modulus_table", true, json!({ "values": table, "note": LATTICE_NOTE }));
        }
    }
    Ok(report)
}

pub fn fixed_point(path: &Path) -> Outcome {
    let mut report = RunReport::new("fixed-point");
    let g = load_grid(&mut report, path)?;
    let fp = g.is_fixed_point();
    report.push("fixed_point", fp.holds, to_value(&fp));
    let per_variable = (1..=g.dim())
        .map(|i| g.nonconstant_wrt(i))
        .collect::<Result<Vec<_>, _>>()?;
    report.push(
        "nonconstant_in_every_variable",
        per_variable.iter().all(|&b| b),
        json!({
            "per_variable": per_variable,
            "note": "lattice stand-in for membership in the bornologous class; bornologousness itself is not decided"
        }),
    );
    Ok(report)
}

pub fn lemma42(path: &Path) -> Outcome {
    let mut report = RunReport::new("lemma42");
    let g = load_grid(&mut report, path)?;
    let (ok, witness) = g.lemma42_holds();
    report.push("lemma42", ok, to_value(&witness));
    Ok(report)
}

fn expansion_detail(t: &Rational) -> Value {
    match cantor::to_base3(t) {
        Ok(e) => json!({
            "t": r(t),
            "expansion": e.to_string(),
            "alternate": e.alternate().as_ref().map(Base3Expansion::to_string),
        }),
        Err(_) => json!({ "t": r(t) }),
    }
}

pub fn cantor_member(t: &str) -> Outcome {
    let mut report = RunReport::new("cantor member");
    let t = rational_arg(t)?;
    report.push("in_cantor", cantor::in_cantor(&t), expansion_detail(&t));
    Ok(report)
}

pub fn ce_member(t: &str) -> Outcome {
    let mut report = RunReport::new("cantor ce-member");
    let t = rational_arg(t)?;
    report.push("in_ce", cantor::in_ce(&t), expansion_detail(&t));
    Ok(report)
}

pub fn cantor_decompose(t: &str) -> Outcome {
    let mut report = RunReport::new("cantor decompose");
    let t = rational_arg(t)?;
    let (x, y) = cantor::cantor_decompose(&t)?;
    let ok = cantor::in_cantor(&x) && cantor::in_cantor(&y) && &x - &y == t;
    report.push("decomposition", ok, json!({ "t": r(&t), "x": r(&x), "y": r(&y) }));
    Ok(report)
}

pub fn refute_ce_triple(level: u32) -> Outcome {
    let mut report = RunReport::new("cantor refute-ce-triple");
    let evidence = cantor::ce_triple_refutation(level)?;
    report.push("ce_triple_refuted", evidence.holds, to_value(&evidence));
    Ok(report)
}

pub fn universal_search(set: Option<&Path>, level: u32, a: &str, b: &str) -> Outcome {
    let mut report = RunReport::new("universal search");
    let (a, b) = (rational_arg(a)?, rational_arg(b)?);
    for (name, v) in [("a", &a), ("b", &b)] {
        if v <= &int(0) {
            return Err(CliError::Usage(format!("--{name} must be positive")));
        }
    }
    let (values, source) = match set {
        Some(path) => (load_set(&mut report, path)?, json!(path.display().to_string())),
        None => (cantor::ce_level_set(level)?, json!({ "ce_level": level })),
    };
    let found = cantor::three_point_search(&values, &a, &b);
    let detail = json!({
        "set": source,
        "size": values.len(),
        "a": r(&a),
        "b": r(&b),
        "triple": found.as_ref().map(|(x, y, z)| vec![r(x), r(y), r(z)]),
    });
    report.push("triple_found", found.is_some(), detail);
    Ok(report)
}

pub fn embed(path: &Path) -> Outcome {
    let mut report = RunReport::new("embed");
    let values = load_set(&mut report, path)?;
    let images = mpf_core::transcendental_embed(&values);
    let mut isometric = true;
    for (a, ia) in &images {
        for (b, ib) in &images {
            let d = ib - ia;
            isometric &= d.is_rational() && d.q == b - a && !ia.is_rational();
        }
    }
    let mapping: Vec<Value> = images
        .iter()
        .map(|(a, img)| json!({ "a": r(a), "image": img.to_string(), "q": r(&img.q), "r": r(&img.r) }))
        .collect();
    report.push("isometric_transcendental", isometric, json!({ "mapping": mapping }));
    Ok(report)
}

pub fn to_json_pretty<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, format!("{text}\n")).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
