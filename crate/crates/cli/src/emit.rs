//! Deterministic output encoding.
//!
//! Every floating-point value is rendered as `{:.12e}` so that repeated runs
//! with the same configuration produce byte-identical documents, and so that
//! parsing an emitted JSON document and re-serializing it reproduces the
//! original bytes: a 13-significant-digit decimal is recovered exactly by the
//! nearest-f64 parse, and re-rendering that f64 yields the same 13 digits.
//! Object keys are stored in a sorted map, so key order is canonical by
//! construction.

use serde_json::Value;

/// Fixed rendering for every floating-point number the tool prints.
pub fn fmt_f64(x: f64) -> String {
    assert!(x.is_finite(), "refusing to format a non-finite number");
    format!("{x:.12e}")
}

/// Renders a JSON value with sorted keys, two-space indentation and `{:.12e}`
/// numbers. Arrays of scalars stay on one line; arrays holding containers are
/// split one element per line.
pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_scalar(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&fmt_f64(n.as_f64().expect("numeric JSON value")));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serialization")),
        _ => unreachable!("containers are handled by write_value"),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
            } else if items.iter().all(is_scalar) {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_scalar(item, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    pad(indent + 1, out);
                    write_value(item, indent + 1, out);
                    if k + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(indent, out);
                out.push(']');
            }
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
            } else {
                out.push_str("{\n");
                for (k, (key, item)) in map.iter().enumerate() {
                    pad(indent + 1, out);
                    out.push_str(&serde_json::to_string(key).expect("key serialization"));
                    out.push_str(": ");
                    write_value(item, indent + 1, out);
                    if k + 1 < map.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(indent, out);
                out.push('}');
            }
        }
        scalar => write_scalar(scalar, out),
    }
}

fn pad(indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// Quotes a CSV field when it contains a comma, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Converts an `f64` into a JSON number value.
pub fn num(x: f64) -> Value {
    assert!(x.is_finite(), "refusing to encode a non-finite number");
    Value::from(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_render_in_exponent_form() {
        assert_eq!(fmt_f64(1.1996786402577337), "1.199678640258e0");
        assert_eq!(fmt_f64(-31.42434196792768), "-3.142434196793e1");
        assert_eq!(fmt_f64(0.0), "0.000000000000e0");
    }

    #[test]
    fn json_round_trips_byte_identically() {
        let doc = json!({
            "beta": [1.5, -2.25e-8, 0.0],
            "alpha": {"n": 4, "flag": true, "name": "x\"y"},
            "empty": [],
            "nested": [{"k": 1}, {"k": 2}],
        });
        let first = to_json(&doc);
        let reparsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(to_json(&reparsed), first);
    }

    #[test]
    fn keys_are_sorted() {
        let doc = json!({"zeta": 1, "alpha": 2});
        let text = to_json(&doc);
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
    }

    #[test]
    fn csv_fields_are_quoted_when_needed() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
