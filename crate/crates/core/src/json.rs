//! Shared JSON text format.
//!
//! A polynomial is an array of terms `{"c": "num/den", "e": [exponents]}`;
//! a Laurent polynomial uses an integer `"e"`. Matrices are row-major
//! nested arrays. Rationals are strings (integers are also accepted).

use serde_json::{json, Value};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{LaurentMatrix, LaurentPoly, Matrix, MultiPoly, PolyMatrix};
use crate::error::{Error, Result};

fn bad(what: &str, v: &Value) -> Error {
    let mut s = v.to_string();
    if s.len() > 60 {
        s.truncate(60);
        s.push_str("...");
    }
    Error::Parse(format!("expected {what}, found {s}"))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::to_text(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(rational::q(i)),
            None => rational::parse(&n.to_string()),
        },
        _ => Err(bad("a rational", v)),
    }
}

/// Serializes with exponent vectors padded to `nvars`.
pub fn poly_to_json(p: &MultiPoly, nvars: usize) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(m, c)| json!({"c": rational::to_text(c), "e": m.padded(nvars)}))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let arr = v.as_array().ok_or_else(|| bad("a term array", v))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let c = rational_from_json(t.get("c").ok_or_else(|| bad("a term with \"c\"", t))?)?;
        let e = t
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("a term with \"e\"", t))?
            .iter()
            .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("an exponent", x)))
            .collect::<Result<Vec<u32>>>()?;
        terms.push((c, e));
    }
    Ok(MultiPoly::from_terms(terms))
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"c": rational::to_text(c), "e": e})).collect())
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    // A bare rational is accepted as a constant.
    if v.is_string() || v.is_number() {
        return Ok(LaurentPoly::constant(rational_from_json(v)?));
    }
    let arr = v.as_array().ok_or_else(|| bad("a Laurent term array", v))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let c = rational_from_json(t.get("c").ok_or_else(|| bad("a term with \"c\"", t))?)?;
        let e = t.get("e").and_then(Value::as_i64).ok_or_else(|| bad("an integer exponent", t))?;
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn matrix_to_json<T>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(&f).collect())).collect())
}

pub fn matrix_from_json<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let rows = v.as_array().ok_or_else(|| bad("a matrix (array of rows)", v))?;
    let parsed = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| bad("a matrix row", r))?.iter().map(&f).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<Vec<T>>>>()?;
    Matrix::try_from_rows(parsed).ok_or_else(|| bad("rows of equal length", v))
}

pub fn rat_matrix_to_json(m: &Matrix<Rational>) -> Value {
    matrix_to_json(m, rational_to_json)
}

pub fn rat_matrix_from_json(v: &Value) -> Result<Matrix<Rational>> {
    matrix_from_json(v, rational_from_json)
}

pub fn poly_matrix_to_json(m: &PolyMatrix, nvars: usize) -> Value {
    matrix_to_json(m, |p| poly_to_json(p, nvars))
}

pub fn poly_matrix_from_json(v: &Value) -> Result<PolyMatrix> {
    matrix_from_json(v, poly_from_json)
}

pub fn laurent_matrix_to_json(m: &LaurentMatrix) -> Value {
    matrix_to_json(m, laurent_to_json)
}

pub fn laurent_matrix_from_json(v: &Value) -> Result<LaurentMatrix> {
    matrix_from_json(v, laurent_from_json)
}

pub fn int_list(v: &Value) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| bad("an integer array", v))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("an integer", x)))
        .collect()
}
