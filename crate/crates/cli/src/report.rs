//! Report assembly and rendering. Every command produces one
//! `Report`; both output modes are derived from the same structured
//! payload so they cannot disagree on a numeric field.

use std::fmt::Write as _;

use num::{BigInt, BigUint};
use serde_json::{json, Value};

use seifert_core::Rat;

/// Command failure, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input shape or values: exit code 1.
    Usage(String),
    /// A mathematical precondition does not hold: exit code 2, with
    /// the failing check named.
    Precondition { check: &'static str, message: String },
}

pub fn precondition(check: &'static str, message: impl Into<String>) -> CliError {
    CliError::Precondition {
        check,
        message: message.into(),
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, results: Value) -> Self {
        Report {
            command,
            inputs,
            results,
            assumptions: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "assumptions": self.assumptions,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        })
    }

    /// Text rendering: the same tree as the JSON, minus the warnings,
    /// which go to standard error instead.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs:");
        write_value(&mut out, &self.inputs, 1);
        let _ = writeln!(out, "results:");
        write_value(&mut out, &self.results, 1);
        if !self.assumptions.is_empty() {
            let _ = writeln!(out, "assumptions:");
            for a in &self.assumptions {
                let _ = writeln!(out, "  - {a}");
            }
        }
        out
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Object(_) | Value::Array(_))
}

/// Inline form "[a, b, c]" for arrays whose items are all scalar.
fn inline_array(value: &Value) -> Option<String> {
    match value {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                if is_scalar(inner) {
                    let _ = writeln!(out, "{pad}{key}: {}", scalar_text(inner));
                } else if let Some(line) = inline_array(inner) {
                    let _ = writeln!(out, "{pad}{key}: {line}");
                } else {
                    let _ = writeln!(out, "{pad}{key}:");
                    write_value(out, inner, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                let _ = writeln!(out, "{pad}[]");
            }
            for item in items {
                if is_scalar(item) {
                    let _ = writeln!(out, "{pad}- {}", scalar_text(item));
                } else if let Some(line) = inline_array(item) {
                    let _ = writeln!(out, "{pad}- {line}");
                } else {
                    // Hang the item off a dash: the dash replaces the
                    // first line's extra indent level.
                    let mut block = String::new();
                    write_value(&mut block, item, indent + 1);
                    let inner_pad = "  ".repeat(indent + 1);
                    match block.strip_prefix(inner_pad.as_str()) {
                        Some(rest) => {
                            let _ = write!(out, "{pad}- {rest}");
                        }
                        None => out.push_str(&block),
                    }
                }
            }
        }
        scalar => {
            let _ = writeln!(out, "{pad}{}", scalar_text(scalar));
        }
    }
}

// ---- exact-value serialization helpers ----

/// Rationals as exact strings: "p/q", or "p" when the denominator is
/// one; never floating point.
pub fn rat_value(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn int_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn uint_value(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

pub fn opt_int_value(x: &Option<BigInt>) -> Value {
    x.as_ref().map_or(Value::Null, int_value)
}
