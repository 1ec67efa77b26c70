//! Canonical JSON and CSV output.
//!
//! JSON objects are written with sorted keys, no whitespace, and every float
//! in `{:.16e}` form (17 significant digits), so equal reports are equal bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::error::{CliError, Result};

/// Formats a float with 17 significant digits; non-finite values become `null`
/// and `-0` prints as `0`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        format!("{:.16e}", 0.0)
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&format_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
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
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(&map[k], out);
            }
            out.push('}');
        }
    }
}

/// Two-column CSV with a header row.
pub fn csv_table(header: [&str; 2], xs: &[f64], ys: &[f64]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for (x, y) in xs.iter().zip(ys) {
        w.write_record([format_f64(*x), format_f64(*y)])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io { path: "<csv>".into(), source: e.into_error() })?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_owned(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_floats_fixed_width() {
        let v = json!({"b": 1.5, "a": [1, -2, 0.1], "c": {"z": null, "y": "q\""}});
        assert_eq!(
            canonical_json(&v),
            r#"{"a":[1,-2,1.0000000000000001e-1],"b":1.5000000000000000e0,"c":{"y":"q\"","z":null}}"#
        );
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, 1e-300, -2.0 / 3.0, 9536.743164062495] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            assert_eq!(s.split('e').next().unwrap().trim_start_matches('-').len(), 18);
        }
        assert_eq!(format_f64(f64::NAN), "null");
    }

    #[test]
    fn canonical_output_is_valid_json() {
        let v = json!({"x": [0.25, 1e10], "k": true});
        let back: Value = serde_json::from_str(&canonical_json(&v)).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let t = csv_table(["tau", "delta"], &[0.0, 1.0], &[0.0, -0.0]).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "tau,delta");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "0.0000000000000000e0,0.0000000000000000e0");
    }

    #[test]
    fn unwritable_path_is_an_error() {
        let err = write_output("x", Some(Path::new("/nonexistent-dir/out.json"))).unwrap_err();
        assert!(matches!(err, CliError::Io { .. }));
    }
}
