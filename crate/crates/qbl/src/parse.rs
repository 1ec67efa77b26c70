//! Text forms of complex numbers, matrices and bundle points.

use qbl_core::algebra::{GroupElement, Matrix2, C64};
use qbl_core::bundles::BundlePoint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

fn bad(what: &'static str, input: &str) -> CliError {
    CliError::Parse { what, input: input.to_owned() }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (whitespace ignored).
pub fn parse_complex(input: &str) -> Result<C64> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || bad("complex number", input);
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| err());
    };
    // split before the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| err())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    Ok(C64::new(re, im))
}

/// Parses `"a,b;c,d"`: rows separated by `;`, entries by `,`.
pub fn parse_matrix(input: &str) -> Result<Matrix2> {
    let rows: Vec<&str> = input.split(';').collect();
    if rows.len() != 2 {
        return Err(bad("matrix", input));
    }
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(bad("matrix", input));
        }
        for c in cells {
            e.push(parse_complex(c)?);
        }
    }
    Ok(Matrix2::from_rows(e[0], e[1], e[2], e[3]))
}

pub fn parse_group(input: &str) -> Result<GroupElement> {
    Ok(GroupElement::new(parse_matrix(input)?)?)
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Entries in the order `z1, z2, z3, z4`: first column, then second column.
pub fn matrix_json(m: &Matrix2) -> Value {
    json!([complex_json(m.z1), complex_json(m.z2), complex_json(m.z3), complex_json(m.z4)])
}

/// Point file: `{"g": [[re, im] × 4], "z": [re, im], "m": 2}` with `g` in
/// `z1, z2, z3, z4` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub g: [[f64; 2]; 4],
    pub z: [f64; 2],
    pub m: i32,
}

impl PointFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_point(&self) -> Result<BundlePoint> {
        let c = |p: [f64; 2]| C64::new(p[0], p[1]);
        let m = Matrix2::new(c(self.g[0]), c(self.g[1]), c(self.g[2]), c(self.g[3]));
        Ok(BundlePoint::new(GroupElement::new(m)?, c(self.z), self.m))
    }

    pub fn from_point(p: &BundlePoint) -> Self {
        let g = p.g.matrix();
        let c = |z: C64| [z.re, z.im];
        Self { g: [c(g.z1), c(g.z2), c(g.z3), c(g.z4)], z: c(p.z), m: p.m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1 - i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("-1e-3+2E+1i").unwrap(), c(-1e-3, 20.0));
        assert_eq!(parse_complex("1e5").unwrap(), c(1e5, 0.0));
        assert_eq!(parse_complex("2e-2i").unwrap(), c(0.0, 2e-2));
        for bad in ["", "x", "1+", "1+2j", "i+1", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matrices_are_row_major() {
        let m = parse_matrix("1,2i;3,4").unwrap();
        assert_eq!(m.rows(), [[c(1.0, 0.0), c(0.0, 2.0)], [c(3.0, 0.0), c(4.0, 0.0)]]);
        assert!(parse_matrix("1,0").is_err());
        assert!(parse_matrix("1,0,0;0,1").is_err());
        assert_eq!(parse_group("1,0;0,1").unwrap(), GroupElement::identity());
        assert!(parse_group("2,0;0,1").is_err());
    }

    #[test]
    fn point_files_round_trip() {
        let g = parse_group("0,-1;1,0").unwrap();
        let p = BundlePoint::new(g, c(0.25, -0.5), 2);
        let f = PointFile::from_point(&p);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(PointFile::from_json(&text).unwrap().to_point().unwrap(), p);
        assert!(PointFile::from_json(r#"{"g":[[1,0],[0,0],[0,0],[1,0]],"z":[1,0]}"#).is_err());
        let not_unimodular = r#"{"g":[[2,0],[0,0],[0,0],[1,0]],"z":[1,0],"m":1}"#;
        assert!(PointFile::from_json(not_unimodular).unwrap().to_point().is_err());
    }
}
