//! Turns a JSON result into the requested output format.
//!
//! Polynomials travel through JSON in their structured form; both text
//! formats turn them back into [`MultiPoly`] so they print in the
//! canonical `z^2*q - z` style.

use std::fmt::Write;

use clap::ValueEnum;
use cwilf::MultiPoly;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

fn as_poly(v: &Value) -> Option<MultiPoly> {
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("vars") && m.contains_key("terms") => {
            serde_json::from_value(v.clone()).ok()
        }
        _ => None,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => as_poly(v).map(|p| p.to_string()),
    }
}

pub fn render(command: &str, value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("path,term,value\n");
            csv_rows(value, "", &mut out);
            out
        }
        Format::Pretty if command == "verify-all" => verify_summary(value),
        Format::Pretty => {
            let mut out = String::new();
            pretty(value, 0, &mut out);
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_rows(v: &Value, path: &str, out: &mut String) {
    if let Some(p) = as_poly(v) {
        for (m, c) in p.terms() {
            let mono = MultiPoly::term(*m, 1).to_string();
            let _ = writeln!(out, "{},{},{}", csv_field(path), csv_field(&mono), c);
        }
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| csv_rows(x, &join(k), out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| csv_rows(x, &join(&i.to_string()), out)),
        _ => {
            let _ = writeln!(out, "{},,{}", csv_field(path), csv_field(&scalar(v).unwrap_or_default()));
        }
    }
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{s}");
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None if is_flat_array(x) => {
                        let _ = writeln!(out, "{pad}{k}: {}", flat(x));
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        pretty(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}[{i}] {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        pretty(x, indent + 1, out);
                    }
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn flat(v: &Value) -> String {
    let items: Vec<String> = v
        .as_array()
        .into_iter()
        .flatten()
        .map(|x| scalar(x).unwrap_or_default())
        .collect();
    format!("[{}]", items.join(", "))
}

fn verify_summary(v: &Value) -> String {
    let mut out = String::new();
    for c in v["criteria"].as_array().into_iter().flatten() {
        let verdict = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "criterion {}: {verdict}  {}",
            c["id"],
            c["title"].as_str().unwrap_or_default()
        );
    }
    out
}
