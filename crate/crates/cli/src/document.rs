//! JSON input documents.
//!
//! Every document is an object with a `"kind"` string and kind-specific
//! fields. Integers are exact JSON integer literals of any size; matrices are
//! arrays of row arrays; infinite invariants are written `"inf"`.

use std::fmt;

use arfkit_core::{
    ArfValue, BrownValue, EnhancedSpace, Error as CoreError, EvenPresentation, F2Matrix, F2Vector,
    IntLattice, IntMatrix, QuadraticSpace, RelativeScenario, SeifertData, SurfaceData,
    SurfaceInvariants,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputDocument {
    QuadraticSpace(QuadraticSpace),
    EnhancedSpace(EnhancedSpace),
    Seifert(SeifertData),
    Surface(SurfaceData),
    Lattice(IntLattice),
    EvenPresentation(EvenPresentation),
    Scenario(RelativeScenario),
}

pub const KINDS: [&str; 7] = [
    "quadratic_space",
    "enhanced_space",
    "seifert",
    "surface",
    "lattice",
    "even_presentation",
    "scenario",
];

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::QuadraticSpace(_) => "quadratic_space",
            InputDocument::EnhancedSpace(_) => "enhanced_space",
            InputDocument::Seifert(_) => "seifert",
            InputDocument::Surface(_) => "surface",
            InputDocument::Lattice(_) => "lattice",
            InputDocument::EvenPresentation(_) => "even_presentation",
            InputDocument::Scenario(_) => "scenario",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown kind \"{0}\" (expected one of: {kinds})", kinds = KINDS.join(", "))]
    UnknownKind(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("invariant violation in `{field}`: {message}")]
    Invariant { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn invariant(field: &str, err: CoreError) -> ParseError {
    let message = match &err {
        CoreError::NotSymmetric { i, j } => {
            format!("matrix is not symmetric: {field}[{i}][{j}] differs from {field}[{j}][{i}]")
        }
        _ => err.to_string(),
    };
    ParseError::Invariant {
        field: field.to_string(),
        message,
    }
}

struct Fields<'a> {
    obj: &'a Map<String, Value>,
}

impl<'a> Fields<'a> {
    fn get(&self, name: &str) -> Result<&'a Value, ParseError> {
        self.obj.get(name).ok_or_else(|| field_err(name, "missing"))
    }

    fn opt(&self, name: &str) -> Option<&'a Value> {
        self.obj.get(name).filter(|v| !v.is_null())
    }

    fn only(&self, allowed: &[&str]) -> Result<(), ParseError> {
        match self.obj.keys().find(|k| k.as_str() != "kind" && !allowed.contains(&k.as_str())) {
            Some(k) => Err(field_err(k.as_str(), "unknown field for this kind")),
            None => Ok(()),
        }
    }
}

fn integer(v: &Value, path: &str) -> Result<BigInt, ParseError> {
    let Value::Number(n) = v else {
        return Err(field_err(path, format!("expected an integer, found {}", type_name(v))));
    };
    let text = n.to_string();
    text.parse::<BigInt>()
        .map_err(|_| field_err(path, format!("expected an exact integer, found {text}")))
}

fn small(v: &Value, path: &str, lo: i64, hi: i64) -> Result<i64, ParseError> {
    let x = integer(v, path)?;
    x.to_i64()
        .filter(|x| (lo..=hi).contains(x))
        .ok_or_else(|| field_err(path, format!("expected an integer in {lo}..={hi}, found {x}")))
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array()
        .ok_or_else(|| field_err(path, format!("expected an array, found {}", type_name(v))))
}

fn int_vector(v: &Value, path: &str) -> Result<Vec<BigInt>, ParseError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

fn bounded_vector(v: &Value, path: &str, hi: i64) -> Result<Vec<u8>, ParseError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| small(x, &format!("{path}[{i}]"), 0, hi).map(|x| x as u8))
        .collect()
}

/// A square matrix; all rows must have as many entries as there are rows.
fn int_matrix(v: &Value, path: &str) -> Result<IntMatrix, ParseError> {
    let rows = array(v, path)?;
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            let r = int_vector(row, &p)?;
            if r.len() != n {
                return Err(field_err(
                    p,
                    format!("row has {} entries but the matrix has {n} rows", r.len()),
                ));
            }
            Ok(r)
        })
        .collect()
}

fn bit_matrix(v: &Value, path: &str) -> Result<F2Matrix, ParseError> {
    let rows = array(v, path)?;
    let n = rows.len();
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let p = format!("{path}[{i}]");
            let r = bounded_vector(row, &p, 1)?;
            if r.len() != n {
                return Err(field_err(
                    p,
                    format!("row has {} entries but the matrix has {n} rows", r.len()),
                ));
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>, _>>()?;
    F2Matrix::from_rows(&entries).map_err(|e| invariant(path, e))
}

fn arf_value(v: &Value, path: &str) -> Result<ArfValue, ParseError> {
    if v.as_str() == Some("inf") {
        return Ok(ArfValue::Infinity);
    }
    small(v, path, 0, 1).map(|b| ArfValue::from_bit(b == 1))
}

fn brown_value(v: &Value, path: &str) -> Result<BrownValue, ParseError> {
    if v.as_str() == Some("inf") {
        return Ok(BrownValue::Infinity);
    }
    small(v, path, 0, 7).map(BrownValue::new)
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let Value::Object(obj) = &value else {
        return Err(ParseError::Syntax {
            line: 1,
            column: 1,
            message: format!("top level must be an object, found {}", type_name(&value)),
        });
    };
    let f = Fields { obj };
    let kind = f
        .get("kind")?
        .as_str()
        .ok_or_else(|| field_err("kind", "expected a string"))?;
    match kind {
        "quadratic_space" => {
            f.only(&["gram", "qvals"])?;
            let gram = bit_matrix(f.get("gram")?, "gram")?;
            let qvals = bounded_vector(f.get("qvals")?, "qvals", 1)?;
            QuadraticSpace::new(gram, F2Vector::from_u8s(&qvals))
                .map(InputDocument::QuadraticSpace)
                .map_err(|e| invariant("gram", e))
        }
        "enhanced_space" => {
            f.only(&["gram", "evals"])?;
            let gram = bit_matrix(f.get("gram")?, "gram")?;
            let evals = bounded_vector(f.get("evals")?, "evals", 3)?;
            EnhancedSpace::new(gram, evals)
                .map(InputDocument::EnhancedSpace)
                .map_err(|e| invariant("gram", e))
        }
        "seifert" => {
            f.only(&["matrix", "components", "lk"])?;
            let matrix = int_matrix(f.get("matrix")?, "matrix")?;
            let components = match f.opt("components") {
                Some(v) => small(v, "components", 1, i64::from(u32::MAX))? as usize,
                None => 1,
            };
            let lk = f.opt("lk").map(|v| int_matrix(v, "lk")).transpose()?;
            let sd = SeifertData::new(matrix, components, lk)
                .and_then(|sd| sd.properness().map(|_| sd))
                .map_err(|e| {
                    let field = match &e {
                        CoreError::InconsistentLinking(_) | CoreError::NotSymmetric { .. } => "lk",
                        CoreError::Shape(m) if m.starts_with("linking") => "lk",
                        CoreError::Shape(m) if m.starts_with("a link") => "components",
                        _ => "matrix",
                    };
                    invariant(field, e)
                })?;
            Ok(InputDocument::Seifert(sd))
        }
        "surface" => {
            f.only(&["gram", "evals", "boundary_framing_sum"])?;
            let gram = bit_matrix(f.get("gram")?, "gram")?;
            let evals = bounded_vector(f.get("evals")?, "evals", 3)?;
            let sum = integer(f.get("boundary_framing_sum")?, "boundary_framing_sum")?;
            SurfaceData::new(gram, evals, sum)
                .map(InputDocument::Surface)
                .map_err(|e| {
                    let field = if matches!(e, CoreError::OddFramingSum(_)) {
                        "boundary_framing_sum"
                    } else {
                        "gram"
                    };
                    invariant(field, e)
                })
        }
        "lattice" => {
            f.only(&["matrix"])?;
            let m = int_matrix(f.get("matrix")?, "matrix")?;
            IntLattice::new(m)
                .map(InputDocument::Lattice)
                .map_err(|e| invariant("matrix", e))
        }
        "even_presentation" => {
            f.only(&["matrix"])?;
            let m = int_matrix(f.get("matrix")?, "matrix")?;
            IntLattice::new(m)
                .and_then(EvenPresentation::new)
                .map(InputDocument::EvenPresentation)
                .map_err(|e| invariant("matrix", e))
        }
        "scenario" => parse_scenario(&f).map(InputDocument::Scenario),
        other => Err(ParseError::UnknownKind(other.to_string())),
    }
}

fn parse_scenario(f: &Fields<'_>) -> Result<RelativeScenario, ParseError> {
    let orientation = f
        .get("orientation")?
        .as_str()
        .ok_or_else(|| field_err("orientation", "expected a string"))?;
    let (inner, outer) = match orientation {
        "orientable" => ("arf_f", "arf_boundary"),
        "nonorientable" => ("beta_f", "beta_boundary"),
        other => {
            return Err(field_err(
                "orientation",
                format!("expected \"orientable\" or \"nonorientable\", found \"{other}\""),
            ))
        }
    };
    f.only(&["orientation", "sigma_x", "f_square", inner, outer, "mu_boundary", "ks"])?;
    let sigma_x = integer(f.get("sigma_x")?, "sigma_x")?;
    let f_square = integer(f.get("f_square")?, "f_square")?;
    let bit = |name: &str| -> Result<u8, ParseError> {
        f.opt(name).map_or(Ok(0), |v| small(v, name, 0, 1).map(|b| b as u8))
    };
    let mu_boundary = bit("mu_boundary")?;
    let ks = bit("ks")?;
    let invariants = if orientation == "orientable" {
        SurfaceInvariants::Orientable {
            arf_f: arf_value(f.get(inner)?, inner)?,
            arf_boundary: f.opt(outer).map_or(Ok(ArfValue::Zero), |v| arf_value(v, outer))?,
        }
    } else {
        SurfaceInvariants::Nonorientable {
            beta_f: brown_value(f.get(inner)?, inner)?,
            beta_boundary: f
                .opt(outer)
                .map_or(Ok(BrownValue::Finite(0)), |v| brown_value(v, outer))?,
        }
    };
    let infinite = match invariants {
        SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
            [(inner, arf_f.is_finite()), (outer, arf_boundary.is_finite())]
        }
        SurfaceInvariants::Nonorientable {
            beta_f,
            beta_boundary,
        } => [(inner, beta_f.is_finite()), (outer, beta_boundary.is_finite())],
    };
    if let Some((name, _)) = infinite.iter().find(|(_, finite)| !finite) {
        return Err(ParseError::Invariant {
            field: name.to_string(),
            message: "scenarios with improper surfaces (infinite invariants) are not accepted"
                .into(),
        });
    }
    RelativeScenario::new(sigma_x, f_square, invariants, mu_boundary, ks)
        .map_err(|e| invariant("scenario", e))
}

/// serde_json appends " at line L column C" to its messages.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer is a JSON number"))
}

fn bits_json(v: &F2Vector) -> Value {
    Value::Array(v.bits().map(|b| Value::from(u8::from(b))).collect())
}

fn bit_matrix_json(m: &F2Matrix) -> Value {
    Value::Array(m.rows().iter().map(bits_json).collect())
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(big).collect()))
            .collect(),
    )
}

fn u8s_json(v: &[u8]) -> Value {
    Value::Array(v.iter().map(|&x| Value::from(x)).collect())
}

pub fn arf_json(a: ArfValue) -> Value {
    match a.as_bit() {
        Some(b) => Value::from(b),
        None => Value::from("inf"),
    }
}

pub fn brown_json(b: BrownValue) -> Value {
    match b.value() {
        Some(k) => Value::from(k),
        None => Value::from("inf"),
    }
}

/// The document as a JSON value with keys in a fixed order.
pub fn to_value(doc: &InputDocument) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(doc.kind()));
    match doc {
        InputDocument::QuadraticSpace(s) => {
            m.insert("gram".into(), bit_matrix_json(s.gram()));
            m.insert("qvals".into(), bits_json(s.qvals()));
        }
        InputDocument::EnhancedSpace(s) => {
            m.insert("gram".into(), bit_matrix_json(s.gram()));
            m.insert("evals".into(), u8s_json(s.evals()));
        }
        InputDocument::Seifert(s) => {
            m.insert("matrix".into(), int_matrix_json(s.matrix()));
            m.insert("components".into(), Value::from(s.components()));
            if let Some(lk) = s.lk() {
                m.insert("lk".into(), int_matrix_json(lk));
            }
        }
        InputDocument::Surface(s) => {
            m.insert("gram".into(), bit_matrix_json(s.gram()));
            m.insert("evals".into(), u8s_json(s.evals()));
            m.insert("boundary_framing_sum".into(), big(s.boundary_framing_sum()));
        }
        InputDocument::Lattice(l) => {
            m.insert("matrix".into(), int_matrix_json(l.matrix()));
        }
        InputDocument::EvenPresentation(p) => {
            m.insert("matrix".into(), int_matrix_json(p.lattice().matrix()));
        }
        InputDocument::Scenario(s) => {
            match s.invariants {
                SurfaceInvariants::Orientable { arf_f, arf_boundary } => {
                    m.insert("orientation".into(), Value::from("orientable"));
                    m.insert("arf_f".into(), arf_json(arf_f));
                    m.insert("arf_boundary".into(), arf_json(arf_boundary));
                }
                SurfaceInvariants::Nonorientable {
                    beta_f,
                    beta_boundary,
                } => {
                    m.insert("orientation".into(), Value::from("nonorientable"));
                    m.insert("beta_f".into(), brown_json(beta_f));
                    m.insert("beta_boundary".into(), brown_json(beta_boundary));
                }
            }
            m.insert("sigma_x".into(), big(&s.sigma_x));
            m.insert("f_square".into(), big(&s.f_square));
            m.insert("mu_boundary".into(), Value::from(s.mu_boundary));
            m.insert("ks".into(), Value::from(s.ks));
        }
    }
    Value::Object(m)
}

pub fn serialize(doc: &InputDocument) -> String {
    serde_json::to_string_pretty(&to_value(doc)).expect("JSON values always serialize")
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(self))
    }
}
