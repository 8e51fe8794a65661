//! JSON frame documents.
//!
//! Rational entries are strings such as `"-3/4"` or `"0.25"`, or JSON integers.
//! JSON floats are rejected so nothing inexact enters the exact pipeline.
//! Indices are 1-based.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::frame::{FrameSpec, StructureSpec};
use crate::matrix::Matrix;
use crate::multilinear::form::FormSpinor;
use crate::scalar::{cq_real, parse_rational, Cq, Q};

/// A rational read from either a string or an integer.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat(pub Q);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(crate::scalar::q(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Q::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rat, E> {
                Err(E::custom(format!("float {v} is not accepted; write rationals as strings like \"1/3\"")))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    i: usize,
    j: usize,
    k: usize,
    coeff: Rat,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    kind: String,
    #[serde(rename = "J")]
    j: Option<Vec<Vec<Rat>>>,
    omega: Option<Vec<Vec<Rat>>>,
    #[serde(rename = "J4n")]
    j4n: Option<Vec<Vec<Rat>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    brackets: Vec<Entry>,
    #[serde(default, rename = "H")]
    h: Vec<Entry>,
    g: Option<Vec<Vec<Rat>>>,
    b: Option<Vec<Vec<Rat>>>,
    #[serde(default)]
    structures: Vec<StructureDoc>,
    pair: Option<[usize; 2]>,
}

/// A parsed frame together with the optional choice of GK pair.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameDocument {
    pub frame: FrameSpec,
    /// The document's own `name` field, if any.
    pub name: Option<String>,
    /// 0-based indices into `frame.structures`.
    pub pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    /// 1-based line, when the error is positional.
    pub line: Option<usize>,
    pub column: Option<usize>,
    /// Field path for semantic errors, e.g. `structures[2].J`.
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column, &self.field) {
            (Some(l), Some(c), _) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None, _) => write!(f, "line {l}: {}", self.message),
            (None, _, Some(field)) => write!(f, "field {field}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError { line: None, column: None, field: Some(field.into()), message: message.into() }
}

fn matrix(rows: &[Vec<Rat>], size: usize, field: &str) -> Result<Matrix<Cq>, ParseError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(field_error(field, format!("expected a {size}×{size} matrix")));
    }
    Ok(Matrix::from_fn(size, size, |i, j| cq_real(rows[i][j].0.clone())))
}

fn index(value: usize, dim: usize, field: String) -> Result<usize, ParseError> {
    if value == 0 || value > dim {
        return Err(field_error(field, format!("index {value} outside 1..={dim}")));
    }
    Ok(value)
}

pub fn parse_document(text: &str) -> Result<FrameDocument, ParseError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    let dim = raw.dim;
    if dim == 0 || dim % 2 == 1 || dim > 8 {
        return Err(field_error("dim", format!("dimension {dim} must be even and between 2 and 8")));
    }
    let mut frame = FrameSpec::abelian(dim);
    if let Some(name) = &raw.name {
        frame = frame.named(name);
    }
    for (n, e) in raw.brackets.iter().enumerate() {
        let i = index(e.i, dim, format!("brackets[{n}].i"))?;
        let j = index(e.j, dim, format!("brackets[{n}].j"))?;
        let k = index(e.k, dim, format!("brackets[{n}].k"))?;
        if i == j {
            return Err(field_error(format!("brackets[{n}]"), "[e_i, e_i] must vanish"));
        }
        let prior = frame.constants.get(k - 1, i - 1, j - 1).clone();
        frame.constants.set_antisymmetric(i - 1, j - 1, k - 1, prior + cq_real(e.coeff.0.clone()));
    }
    let mut twist = FormSpinor::zero(dim);
    for (n, e) in raw.h.iter().enumerate() {
        let i = index(e.i, dim, format!("H[{n}].i"))?;
        let j = index(e.j, dim, format!("H[{n}].j"))?;
        let k = index(e.k, dim, format!("H[{n}].k"))?;
        if i == j || j == k || i == k {
            return Err(field_error(format!("H[{n}]"), "repeated index in a 3-form"));
        }
        twist = twist.add(&FormSpinor::monomial(dim, &[i, j, k]).scale(&cq_real(e.coeff.0.clone())));
    }
    frame = frame.with_twist(twist);
    if let Some(g) = &raw.g {
        frame = frame.with_metric(matrix(g, dim, "g")?);
    }
    if let Some(b) = &raw.b {
        frame = frame.with_b_field(matrix(b, dim, "b")?);
    }
    for (n, s) in raw.structures.iter().enumerate() {
        let path = |f: &str| format!("structures[{n}].{f}");
        let (given, spec) = match s.kind.as_str() {
            "complex" => {
                let m = s.j.as_ref().ok_or_else(|| field_error(path("J"), "complex structure needs J"))?;
                ("J", StructureSpec::Complex(matrix(m, dim, &path("J"))?))
            }
            "symplectic" => {
                let m = s.omega.as_ref().ok_or_else(|| field_error(path("omega"), "symplectic structure needs omega"))?;
                ("omega", StructureSpec::Symplectic(matrix(m, dim, &path("omega"))?))
            }
            "explicit" => {
                let m = s.j4n.as_ref().ok_or_else(|| field_error(path("J4n"), "explicit structure needs J4n"))?;
                ("J4n", StructureSpec::Explicit(matrix(m, 2 * dim, &path("J4n"))?))
            }
            other => {
                return Err(field_error(
                    path("kind"),
                    format!("unknown kind {other:?}; expected complex, symplectic or explicit"),
                ))
            }
        };
        let present = [("J", s.j.is_some()), ("omega", s.omega.is_some()), ("J4n", s.j4n.is_some())];
        if let Some((extra, _)) = present.iter().find(|(f, p)| *p && *f != given) {
            return Err(field_error(path(extra), format!("field not allowed for kind {}", s.kind)));
        }
        frame = frame.with_structure(spec);
    }
    let count = frame.structures.len();
    let pair = match raw.pair {
        Some([a, b]) => {
            let a = index(a, count, "pair[0]".into())?;
            let b = index(b, count, "pair[1]".into())?;
            if a == b {
                return Err(field_error("pair", "a pair needs two different structures"));
            }
            Some((a - 1, b - 1))
        }
        None => None,
    };
    Ok(FrameDocument { frame, name: raw.name, pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::library::*;

    #[test]
    fn minimal_document() {
        let doc = parse_document(r#"{"dim": 4, "brackets": [{"i": 1, "j": 2, "k": 3, "coeff": "1"}]}"#).unwrap();
        assert_eq!(doc.frame.constants, kodaira_thurston().constants);
        assert!(doc.frame.metric.is_none() && doc.pair.is_none());
    }

    #[test]
    fn malformed_rational_reports_line() {
        let text = "{\n  \"dim\": 4,\n  \"H\": [{\"i\": 1, \"j\": 2, \"k\": 3, \"coeff\": \"1/x\"}]\n}";
        let err = parse_document(text).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(err.message.contains("malformed rational"), "{err}");
    }

    #[test]
    fn floats_and_unknown_fields_are_rejected() {
        let err = parse_document("{\"dim\": 4,\n\"g\": [[0.5]]}").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(parse_document(r#"{"dim": 4, "metric": []}"#).unwrap_err().message.contains("unknown field"));
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let err = parse_document(r#"{"dim": 4, "brackets": [{"i": 1, "j": 5, "k": 3, "coeff": 1}]}"#).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("brackets[0].j"));
        let err = parse_document(r#"{"dim": 4, "structures": [{"kind": "complex", "omega": []}]}"#).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("structures[0].J"));
        let err = parse_document(r#"{"dim": 4, "g": [["1"]]}"#).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("g"));
        let err = parse_document(r#"{"dim": 3}"#).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("dim"));
    }

    #[test]
    fn twist_ordering_sign() {
        let doc = parse_document(r#"{"dim": 4, "H": [{"i": 2, "j": 1, "k": 3, "coeff": "1/2"}]}"#).unwrap();
        assert_eq!(doc.frame.twist, FormSpinor::monomial(4, &[1, 2, 3]).scale(&cq_real(crate::scalar::qr(-1, 2))));
    }
}
