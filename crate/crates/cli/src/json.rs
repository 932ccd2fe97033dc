//! Canonical JSON output: keys sorted, floats printed with 17 significant
//! digits so identical runs are byte-identical.

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Value>),
    Object(BTreeMap<String, Value>),
}

impl Value {
    pub fn object() -> BTreeMap<String, Value> {
        BTreeMap::new()
    }

    pub fn floats(values: &[f64]) -> Value {
        Value::Array(values.iter().map(|&v| Value::Float(v)).collect())
    }
}

fn escape(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Float(f) => {
            if f.is_nan() {
                out.push_str("\"nan\"");
            } else if f.is_infinite() {
                out.push_str(if *f > 0.0 { "\"inf\"" } else { "\"-inf\"" });
            } else {
                out.push_str(&format!("{f:.16e}"));
            }
        }
        Value::Str(s) => escape(s, out),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                escape(k, out);
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

/// Renders a top-level object with a trailing newline.
pub fn render(map: BTreeMap<String, Value>) -> String {
    let mut out = String::new();
    write_value(&Value::Object(map), &mut out);
    out.push('\n');
    out
}

/// Key/value convenience rendering for the CSV output mode.
pub fn render_csv(map: &BTreeMap<String, Value>) -> String {
    let mut out = String::from("key,value\n");
    fn flat(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    flat(&format!("{prefix}[{i}]"), item, out);
                }
            }
            Value::Object(map) => {
                for (k, item) in map {
                    flat(&format!("{prefix}.{k}"), item, out);
                }
            }
            Value::Null => out.push_str(&format!("{prefix},\n")),
            Value::Bool(b) => out.push_str(&format!("{prefix},{b}\n")),
            Value::Int(i) => out.push_str(&format!("{prefix},{i}\n")),
            Value::Float(f) => out.push_str(&format!("{prefix},{f:.16e}\n")),
            Value::Str(s) => out.push_str(&format!("{prefix},{}\n", s.replace(',', ";"))),
        }
    }
    for (k, v) in map {
        flat(k, v, &mut out);
    }
    out
}

/// FNV-1a digest of the raw input bytes, hex encoded; identifies the inputs
/// inside the reproducibility envelope.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}
