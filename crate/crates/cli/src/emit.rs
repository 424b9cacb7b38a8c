//! Output encoding shared by every subcommand.
//!
//! JSON keeps keys in insertion order. Rationals are already strings `"p/q"`
//! by the time they get here; integers at or above `2^53` in absolute value
//! become decimal strings. CSV flattens nested objects into dotted column
//! names and writes arrays as compact JSON cells. When a command names a
//! record list, the CSV has one row per record with the remaining top-level
//! fields repeated on every row.

use serde::Serialize;
use serde_json::{Map, Value};

/// Largest magnitude a JSON consumer can hold exactly in a double.
const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("floating-point value {0} in output")]
    Float(String),
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("csv encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("unsupported format for this output: {0}")]
    UnsupportedFormat(String),
}

/// Serializes and applies the integer rule; rejects any float.
pub fn to_value<T: Serialize>(v: &T) -> Result<Value, EmitError> {
    normalize(serde_json::to_value(v)?)
}

fn normalize(v: Value) -> Result<Value, EmitError> {
    Ok(match v {
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                if u >= SAFE_INTEGER {
                    return Ok(Value::String(u.to_string()));
                }
            } else if let Some(i) = n.as_i64() {
                if i.unsigned_abs() >= SAFE_INTEGER {
                    return Ok(Value::String(i.to_string()));
                }
            } else {
                return Err(EmitError::Float(n.to_string()));
            }
            Value::Number(n)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect::<Result<_, _>>()?),
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, v) in map {
                out.insert(k, normalize(v)?);
            }
            Value::Object(out)
        }
        other => other,
    })
}

/// Encodes `value`; `records` names the top-level array that becomes the
/// CSV rows.
pub fn emit(value: &Value, format: Format, records: Option<&str>) -> Result<String, EmitError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(value, records),
    }
}

fn csv_rows(value: &Value, records: Option<&str>) -> Result<String, EmitError> {
    let Value::Object(top) = value else {
        return Err(EmitError::UnsupportedFormat("csv needs an object at the top level".into()));
    };
    let list = records.and_then(|key| match top.get(key) {
        Some(Value::Array(items)) if !items.is_empty() => Some((key, items)),
        _ => None,
    });
    let mut rows: Vec<Vec<(String, Value)>> = Vec::new();
    match list {
        Some((key, items)) => {
            let mut base = Vec::new();
            for (k, v) in top.iter().filter(|(k, _)| k.as_str() != key) {
                flatten(k, v, &mut base);
            }
            for item in items {
                let mut row = base.clone();
                match item {
                    Value::Object(fields) => {
                        for (k, v) in fields {
                            flatten(k, v, &mut row);
                        }
                    }
                    other => row.push((key.to_string(), other.clone())),
                }
                rows.push(row);
            }
        }
        None => {
            let mut row = Vec::new();
            for (k, v) in top {
                flatten(k, v, &mut row);
            }
            rows.push(row);
        }
    }

    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(rows[0].iter().map(|(k, _)| k.as_str()))?;
    for row in &rows {
        w.write_record(row.iter().map(|(_, v)| cell(v)))?;
    }
    let bytes = w.into_inner().map_err(|e| EmitError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, inner) in map {
                flatten(&format!("{prefix}.{k}"), inner, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        compound => compound.to_string(),
    }
}
