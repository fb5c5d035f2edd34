//! Deterministic number formatting and file emission.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Value};

/// `x` rounded to 9 significant digits.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Shortest round-trip text of `x` after rounding to 9 significant digits.
pub fn fmt9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:?}", round9(x))
}

/// Rewrite every number in a JSON value to 9 significant digits; non-finite
/// numbers become null.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => serde_json::Number::from_f64(round9(x)).map_or(Value::Null, Value::Number),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn json_text(v: Value) -> String {
    serde_json::to_string_pretty(&round_json(v)).expect("JSON values serialize")
}

pub fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

/// CSV with a header row; `rows` are already formatted cells.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Which artifacts to write.
#[derive(Debug, Clone, Copy, Default)]
pub struct Emit {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

impl std::str::FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut e = Emit::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "csv" => e.csv = true,
                "json" => e.json = true,
                "svg" => e.svg = true,
                other => return Err(format!("unknown emit kind '{other}' (expected csv, json, svg)")),
            }
        }
        Ok(e)
    }
}
