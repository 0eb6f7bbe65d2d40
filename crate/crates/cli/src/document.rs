//! The JSON input formats: quiver documents and rational matrices.

use cluster_reduce::linalg::parse_rational;
use cluster_reduce::{fomin6, ExchangeMatrix, QMatrix, QuiverFamilyParams};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Where the exchange matrix of a document comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Matrix(ExchangeMatrix),
    Family(QuiverFamilyParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuiverDocument {
    pub source: Source,
    pub label: Option<String>,
}

/// Integer or rational entry as written in JSON: a number or a string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    name: String,
    r: i64,
    s: i64,
    t: i64,
    p: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: String,
    matrix: Option<Vec<Vec<Entry>>>,
    family: Option<RawFamily>,
    label: Option<String>,
}

#[derive(Serialize)]
struct FamilyOut<'a> {
    name: &'a str,
    r: i64,
    s: i64,
    t: i64,
    p: i64,
}

impl QuiverDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                raw.schema_version
            )));
        }
        let source = match (raw.matrix, raw.family) {
            (Some(rows), None) => {
                let rows = rows
                    .into_iter()
                    .map(|row| row.into_iter().map(integer_entry).collect())
                    .collect::<Result<Vec<Vec<BigInt>>, _>>()?;
                Source::Matrix(ExchangeMatrix::new(rows)?)
            }
            (None, Some(f)) => {
                if f.name != "fomin6" {
                    return Err(CliError::UnknownFamily(f.name));
                }
                Source::Family(QuiverFamilyParams::new(f.r, f.s, f.t, f.p)?)
            }
            _ => {
                return Err(CliError::Input(
                    "document needs exactly one of \"matrix\" and \"family\"".into(),
                ))
            }
        };
        Ok(QuiverDocument {
            source,
            label: raw.label,
        })
    }

    /// Document for a family instance, written out as an explicit matrix.
    pub fn example(name: &str, params: &[i64]) -> Result<Self, CliError> {
        if name != "fomin6" {
            return Err(CliError::UnknownFamily(name.to_string()));
        }
        let [r, s, t, p] = params else {
            return Err(CliError::Input(format!(
                "fomin6 takes 4 parameters (r s t p), got {}",
                params.len()
            )));
        };
        let family = QuiverFamilyParams::new(*r, *s, *t, *p)?;
        Ok(QuiverDocument {
            source: Source::Matrix(fomin6(family)),
            label: Some(format!("fomin6(r={r}, s={s}, t={t}, p={p})")),
        })
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        match &self.source {
            Source::Matrix(b) => b.clone(),
            Source::Family(params) => fomin6(*params),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({ "schema_version": SCHEMA_VERSION });
        match &self.source {
            Source::Matrix(b) => doc["matrix"] = integer_matrix_json(b),
            Source::Family(f) => {
                doc["family"] = json!(FamilyOut {
                    name: "fomin6",
                    r: f.r,
                    s: f.s,
                    t: f.t,
                    p: f.p,
                })
            }
        }
        if let Some(label) = &self.label {
            doc["label"] = json!(label);
        }
        doc
    }
}

fn integer_entry(e: Entry) -> Result<BigInt, CliError> {
    match e {
        Entry::Int(x) => Ok(BigInt::from(x)),
        Entry::Text(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("matrix entry {s:?} is not an integer"))),
    }
}

/// Integers as JSON numbers when they fit in `i64`, as strings otherwise.
pub fn integer_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn integer_matrix_json(b: &ExchangeMatrix) -> Value {
    Value::Array(
        (0..b.n())
            .map(|i| Value::Array(b.row(i).iter().map(integer_json).collect()))
            .collect(),
    )
}

/// Parses a JSON array of rows whose entries are integers or `"p/q"` strings.
pub fn parse_rational_matrix(text: &str) -> Result<QMatrix, CliError> {
    let rows: Vec<Vec<Entry>> = serde_json::from_str(text)?;
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Int(x) => Ok(BigInt::from(x).into()),
                    Entry::Text(s) => parse_rational(&s).map_err(CliError::from),
                })
                .collect()
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(QMatrix::from_rows(rows, cols)?)
}
