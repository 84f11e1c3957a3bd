//! Output envelopes and number formatting.

use std::io::Write;

use clap::ValueEnum;
use epkit::algebra::real::{self, Real};
use epkit::{IBig, RBig};
use serde_json::{json, Map, Value};

use crate::{Failure, Outcome, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

pub fn rat(x: &RBig) -> Value {
    Value::String(real::rational_string(x))
}

pub fn int(x: &IBig) -> Value {
    Value::String(x.to_string())
}

pub fn dec(x: &Real, cfg: &RunConfig) -> Value {
    Value::String(real::to_decimal(x, cfg.digits))
}

pub fn decs<'a>(xs: impl IntoIterator<Item = &'a Real>, cfg: &RunConfig) -> Value {
    Value::Array(xs.into_iter().map(|x| dec(x, cfg)).collect())
}

pub fn sci(x: &Real, cfg: &RunConfig) -> Value {
    Value::String(real::to_scientific(x, cfg.digits.max(2)))
}

/// Fixed-point decimal with trailing zeros removed.
pub fn short_decimal(x: &RBig, digits: usize) -> String {
    let s = real::rational_to_decimal(x, digits);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn named<V: Into<Value>>(names: &[String], values: impl IntoIterator<Item = V>) -> Value {
    let mut m = Map::new();
    for (k, v) in names.iter().zip(values) {
        m.insert(k.clone(), v.into());
    }
    Value::Object(m)
}

pub fn emit(out: &mut dyn Write, command: &str, cfg: &RunConfig, o: &Outcome) -> std::io::Result<()> {
    if let Some(csv) = &o.csv {
        return out.write_all(csv.as_bytes());
    }
    match cfg.format {
        Format::Json => {
            let env = json!({"command": command, "config": cfg.to_json(), "result": o.result});
            writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("serializable"))
        }
        Format::Pretty => match &o.text {
            Some(t) => out.write_all(t.as_bytes()),
            None => {
                writeln!(out, "{command}")?;
                for (k, v) in flatten(&o.result) {
                    writeln!(out, "  {k}: {v}")?;
                }
                Ok(())
            }
        },
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])?;
            for (k, v) in flatten(&o.result) {
                w.write_record([k, v])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            out.write_all(&bytes)
        }
    }
}

pub fn emit_error(out: &mut dyn Write, err: &mut dyn Write, command: &str, cfg: &RunConfig, f: &Failure) {
    let e = f.to_json();
    match cfg.format {
        Format::Json => {
            let env = json!({"command": command, "config": cfg.to_json(), "error": e});
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("serializable"));
        }
        _ => {
            let _ = writeln!(err, "error ({}): {}", e["kind"].as_str().unwrap_or("error"), e["message"].as_str().unwrap_or(""));
        }
    }
}

/// Dotted-path flattening used by the pretty and csv renderings.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, acc: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    go(&key(k), x, acc);
                }
            }
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = xs.iter().map(scalar).collect();
                acc.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    go(&key(&i.to_string()), x, acc);
                }
            }
            other => acc.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut acc = Vec::new();
    go("", v, &mut acc);
    for (k, _) in acc.iter_mut().filter(|(k, _)| k.is_empty()) {
        *k = "result".into();
    }
    acc
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
