//! The polynomial corpus: loading, validation and lookup.

use std::path::{Path, PathBuf};

use hypcone::sections::Irreducibility;
use hypcone::{parse_poly, MultiPolyQ, Rational, Scalar};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

/// The corpus shipped with the binary.
pub const BUNDLED: &str = include_str!("../corpus/corpus.json");

/// Overrides the bundled corpus when `--corpus` is absent.
pub const CORPUS_ENV: &str = "HYP_CORPUS";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("corpus must be an object with an `entries` array")]
    Shape,
    #[error("entry {entry}: field `{field}`: {message}")]
    Field {
        entry: String,
        field: String,
        message: String,
    },
    #[error("duplicate entry id {0:?}")]
    Duplicate(String),
    #[error("{0:?} is neither a corpus id nor a readable file")]
    Unknown(String),
    #[error("polynomial file {path}: {source}")]
    PolyFile {
        path: PathBuf,
        #[source]
        source: hypcone::Error,
    },
}

impl CorpusError {
    pub fn code(&self) -> &'static str {
        match self {
            CorpusError::Io { .. } => "E_CORPUS_IO",
            CorpusError::Json(_) | CorpusError::Shape => "E_CORPUS_JSON",
            CorpusError::Field { .. } => "E_CORPUS_SCHEMA",
            CorpusError::Duplicate(_) => "E_CORPUS_DUPLICATE",
            CorpusError::Unknown(_) => "E_UNKNOWN_POLY",
            CorpusError::PolyFile { source, .. } => source.code(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    nvars: usize,
    degree: usize,
    polynomial: String,
    irreducible: String,
    known_pairs: Option<usize>,
    known_factors: Option<Vec<String>>,
    provenance: String,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub nvars: usize,
    pub degree: usize,
    /// Source text as written in the corpus.
    pub text: String,
    pub poly: MultiPolyQ,
    pub irreducible: Irreducibility,
    pub known_pairs: Option<usize>,
    pub known_factors: Vec<MultiPolyQ>,
    pub provenance: String,
}

fn field(entry: &str, field: &str, message: impl Into<String>) -> CorpusError {
    CorpusError::Field {
        entry: entry.to_string(),
        field: field.to_string(),
        message: message.into(),
    }
}

/// Name of a raw entry for error messages: its id, or its position.
fn entry_name(value: &Value, index: usize) -> String {
    match value.get("id").and_then(Value::as_str) {
        Some(id) => format!("{id:?}"),
        None => format!("#{index}"),
    }
}

/// Field named by a serde error message such as "missing field `degree`".
fn field_of(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "<entry>".to_string())
}

fn validate(raw: RawEntry) -> Result<CorpusEntry, CorpusError> {
    let name = format!("{:?}", raw.id);
    let poly = parse_poly(&raw.polynomial, raw.nvars).map_err(|e| field(&name, "polynomial", e.to_string()))?;
    let found = poly
        .homogeneous_degree()
        .map_err(|e| field(&name, "polynomial", e.to_string()))?;
    if found != raw.degree {
        return Err(field(
            &name,
            "degree",
            format!("declared {}, polynomial has degree {found}", raw.degree),
        ));
    }
    let irreducible: Irreducibility = raw
        .irreducible
        .parse()
        .map_err(|_| field(&name, "irreducible", format!("unknown value {:?}", raw.irreducible)))?;
    let mut known_factors = Vec::new();
    if let Some(factors) = &raw.known_factors {
        for (k, f) in factors.iter().enumerate() {
            let p = parse_poly(f, raw.nvars).map_err(|e| field(&name, "known_factors", format!("factor {k}: {e}")))?;
            known_factors.push(p);
        }
        let product = known_factors
            .iter()
            .fold(MultiPolyQ::constant(raw.nvars, Rational::from_int(1)), |acc, f| {
                acc.mul(f)
            });
        if product != poly {
            return Err(field(
                &name,
                "known_factors",
                "product does not expand to the polynomial",
            ));
        }
    }
    Ok(CorpusEntry {
        id: raw.id,
        nvars: raw.nvars,
        degree: raw.degree,
        text: raw.polynomial,
        poly,
        irreducible,
        known_pairs: raw.known_pairs,
        known_factors,
        provenance: raw.provenance,
    })
}

/// Parses and validates corpus JSON.
pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let doc: Value = serde_json::from_str(json)?;
    let entries = doc.get("entries").and_then(Value::as_array).ok_or(CorpusError::Shape)?;
    let mut out: Vec<CorpusEntry> = Vec::with_capacity(entries.len());
    for (i, value) in entries.iter().enumerate() {
        let raw: RawEntry = serde_json::from_value(value.clone()).map_err(|e| {
            let message = e.to_string();
            field(&entry_name(value, i), &field_of(&message), message)
        })?;
        let entry = validate(raw)?;
        if out.iter().any(|e| e.id == entry.id) {
            return Err(CorpusError::Duplicate(entry.id));
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn corpus_load(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&text)
}

pub fn bundled() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED).expect("bundled corpus is valid")
}

/// Corpus from `explicit`, else from `$HYP_CORPUS`, else the bundled one.
pub fn load_default(explicit: Option<&Path>) -> Result<(Vec<CorpusEntry>, String), CorpusError> {
    if let Some(p) = explicit {
        return Ok((corpus_load(p)?, p.display().to_string()));
    }
    match std::env::var_os(CORPUS_ENV) {
        Some(p) if !p.is_empty() => {
            let p = PathBuf::from(p);
            Ok((corpus_load(&p)?, p.display().to_string()))
        }
        _ => Ok((bundled(), "bundled".to_string())),
    }
}

/// Looks `poly` up by id, falling back to a file of polynomial text.
///
/// File polynomials get as many variables as the highest index they use
/// and unknown irreducibility.
pub fn resolve(corpus: &[CorpusEntry], poly: &str) -> Result<CorpusEntry, CorpusError> {
    if let Some(e) = corpus.iter().find(|e| e.id == poly) {
        return Ok(e.clone());
    }
    let path = Path::new(poly);
    if !path.is_file() {
        return Err(CorpusError::Unknown(poly.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = text.trim().to_string();
    let wrap = |source| CorpusError::PolyFile {
        path: path.to_path_buf(),
        source,
    };
    let nvars = max_variable(&text).ok_or_else(|| wrap(hypcone::Error::NoVariables))?;
    let parsed = parse_poly(&text, nvars).map_err(wrap)?;
    let degree = parsed.homogeneous_degree().map_err(wrap)?;
    Ok(CorpusEntry {
        id: path.display().to_string(),
        nvars,
        degree,
        text,
        poly: parsed,
        irreducible: Irreducibility::Unknown,
        known_pairs: None,
        known_factors: Vec::new(),
        provenance: "file".to_string(),
    })
}

/// Largest `k` with `xk` in `text`.
fn max_variable(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut best = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(k) = text[start..end].parse::<usize>() {
                best = best.max(Some(k));
            }
            i = end.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}
