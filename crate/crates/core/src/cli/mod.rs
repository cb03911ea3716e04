//! Batch front end: JSON inputs in, deterministic JSON reports out.

mod suites;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cover::{
    galois_pushforward, pullback_splits, squarefree_decompose, trace_translate,
    verify_component_degree_bounds, DoubleCoverData, TwistedSpectralPoly,
};
use crate::error::Error;
use crate::norm::{
    norm_consistency_check, norm_element, AlgebraElement, ElementFile, PointDivisor,
};
use crate::poly::{format_rational, parse_rational, BasePolynomial, SpectralPoly};
use crate::spectral::{
    endoscopy_report, is_cn_cover, phi_surjection, pi0_prym, prym_component_group, DescriptorFile,
    SpectralCoverDescriptor,
};

pub use suites::{run_suite, PropertyOutcome, SUITES};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    /// 3 for violated invariants, 2 for everything the caller got wrong.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(Error::InvariantViolation(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub version: String,
}

impl Report {
    fn new(command: &str, input: &[u8], result: Value) -> Self {
        Self {
            command: command.to_string(),
            input_digest: hex::encode(Sha256::digest(input)),
            result,
            version: VERSION.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut rows = vec![
                ("command".to_string(), report.command.clone()),
                ("input_digest".to_string(), report.input_digest.clone()),
            ];
            flatten("result", &report.result, &mut rows);
            rows.push(("version".to_string(), report.version.clone()));
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in rows {
                writeln!(out, "{k:width$}  {v}").unwrap();
            }
            out
        }
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&format!("{prefix}.{k}"), x, rows);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// Deserializes with the path of the offending field in the error.
fn parse<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn int(v: &BigInt) -> Value {
    v.to_i64()
        .map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn ints(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(int).collect())
}

fn poly(p: &BasePolynomial) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

pub fn run_pi0(input: &[u8]) -> CliResult<Report> {
    let file: DescriptorFile = parse(input)?;
    let desc = SpectralCoverDescriptor::try_from(file)?;
    let k = prym_component_group(&desc)?;
    let pi0 = pi0_prym(&desc)?;
    let phi = phi_surjection(&desc)?;
    let bound = num_traits::pow(BigInt::from(desc.n()), desc.ambient().rank());
    let result = json!({
        "n": desc.n(),
        "g": desc.genus(),
        "ambient_modulus": int(desc.ambient().modulus()),
        "k_generators": k.generators().row_vecs().iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "k_order": int(&k.order()),
        "invariant_factors": ints(pi0.invariant_factors()),
        "order": int(&pi0.order()),
        "bound": int(&bound),
        "phi_kernel_order": int(&phi.kernel_order()),
        "is_cn": is_cn_cover(&desc)?,
    });
    Ok(Report::new("pi0", input, result))
}

pub fn run_endoscopy(n: u64, g: u64) -> CliResult<Report> {
    let r = endoscopy_report(n, g)?;
    let dims: serde_json::Map<String, Value> = r
        .dims
        .iter()
        .map(|&(d, dim)| (d.to_string(), Value::from(dim)))
        .collect();
    let result = json!({
        "n": n,
        "g": g,
        "dims": dims,
        "c_n": r.codimension,
        "bound": r.bound,
    });
    Ok(Report::new(
        "endoscopy",
        format!("n={n};g={g}").as_bytes(),
        result,
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormInput {
    parent: SpectralPoly,
    element: ElementFile,
    #[serde(default)]
    divisor: Option<PointDivisor>,
    #[serde(default)]
    samples: Vec<String>,
}

pub fn run_norm(input: &[u8]) -> CliResult<Report> {
    let file: NormInput = parse(input)?;
    let u = AlgebraElement::new(file.parent.clone(), file.element.coords)?;
    let norm = norm_element(&file.parent, &u)?;
    let mut result = json!({
        "n": file.parent.n(),
        "norm": poly(&norm),
        "degree": norm.degree(),
    });
    if let Some(d) = file.divisor {
        let samples = file
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s).map_err(|message| CliError::Schema {
                    path: format!("samples[{i}]"),
                    message,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        result["divisor_consistent"] =
            norm_consistency_check(&file.parent, &u, &d, &samples)?.into();
    }
    Ok(Report::new("norm", input, result))
}

pub fn run_factor(input: &[u8]) -> CliResult<Report> {
    let s: SpectralPoly = parse(input)?;
    let factored = squarefree_decompose(&s)?;
    let factors = factored
        .factors
        .iter()
        .map(|(f, k)| {
            Ok(json!({
                "multiplicity": k,
                "degree": f.n(),
                "factor": f,
                "within_bounds": verify_component_degree_bounds(&s, &f.to_tpoly())?,
            }))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let result = json!({
        "n": s.n(),
        "trace_free": s.is_trace_free(),
        "factors": factors,
        "profile": factored.multiplicity_profile(),
        "translated": trace_translate(&s)?,
    });
    Ok(Report::new("factor", input, result))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GaloisInput {
    cover: DoubleCoverData,
    #[serde(default)]
    spectral: Option<SpectralPoly>,
    #[serde(default)]
    twisted: Option<TwistedSpectralPoly>,
}

/// Pushes a twisted polynomial forward, or decides whether a spectral
/// polynomial is such a pushforward.
pub fn run_galois(input: &[u8]) -> CliResult<Report> {
    let file: GaloisInput = parse(input)?;
    let result = match (file.spectral, file.twisted) {
        (Some(s), None) => {
            let pre = pullback_splits(&file.cover, &s)?;
            json!({ "splits": pre.is_some(), "preimage": pre })
        }
        (None, Some(z)) => {
            let s = galois_pushforward(&file.cover, &z)?;
            let two = num_rational::BigRational::from_integer(2.into());
            let two_u1 = z.u().first().map(|u1| u1.scale(&two));
            json!({
                "pushforward": s,
                "trace_is_twice_u1": two_u1.is_none_or(|t| s.a(1) == t),
            })
        }
        _ => {
            return Err(CliError::Schema {
                path: ".".into(),
                message: "exactly one of `spectral` and `twisted` is required".into(),
            })
        }
    };
    Ok(Report::new("galois", input, result))
}

/// Runs a named suite; the flag is true when every property held.
pub fn run_verify(suite: &str, seed: u64) -> CliResult<(Report, bool)> {
    let outcomes = run_suite(suite, seed)?;
    let all = outcomes.iter().all(|o| o.counterexample.is_none());
    let result = json!({
        "suite": suite,
        "seed": seed,
        "all_passed": all,
        "properties": outcomes,
    });
    let key = format!("suite={suite};seed={seed}");
    Ok((Report::new("verify", key.as_bytes(), result), all))
}

pub(crate) fn rational_list(p: &BasePolynomial) -> String {
    p.coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}
