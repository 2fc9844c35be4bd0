//! JSON encodings for field elements, matrices and polynomials.
//!
//! ℚ entries are decimal strings (`"3/2"`, `"-4"`); finite-field entries are
//! JSON integers (residues for 𝔽_p, packed base-p digits for 𝔽_{p^k}).
//! Decoding accepts either form for every field.

use serde_json::Value;
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::matrix::{LinalgError, Matrix};
use crate::poly::UnivariatePoly;

/// Version of the report documents emitted by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("expected {0}")]
    Shape(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn fe_to_json(x: &Fe) -> Value {
    match x {
        Fe::Q(r) => Value::String(r.to_string()),
        Fe::P { v, .. } => Value::from(*v),
        Fe::E { c, .. } => Value::from(*c),
    }
}

pub fn fe_from_json(field: &Field, v: &Value) -> Result<Fe, DecodeError> {
    match v {
        Value::String(s) => Ok(field.decode(s)?),
        Value::Number(n) => Ok(field.decode(&n.to_string())?),
        _ => Err(DecodeError::Shape("a field element (string or integer)")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(fe_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(field: &Field, v: &Value) -> Result<Matrix, DecodeError> {
    let rows = v.as_array().ok_or(DecodeError::Shape("an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or(DecodeError::Shape("a row array"))?
                .iter()
                .map(|e| fe_from_json(field, e))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

/// Low-to-high coefficient array.
pub fn poly_to_json(p: &UnivariatePoly) -> Value {
    Value::Array(p.coeffs().iter().map(fe_to_json).collect())
}

pub fn poly_from_json(field: &Field, v: &Value) -> Result<UnivariatePoly, DecodeError> {
    let coeffs = v
        .as_array()
        .ok_or(DecodeError::Shape("a coefficient array"))?
        .iter()
        .map(|c| fe_from_json(field, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UnivariatePoly::new(field.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matrix_round_trip(entries in proptest::collection::vec((-50i64..50, 1i64..20), 9), p in prop::sample::select(vec![0u64, 7, 10007])) {
            let field = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
            let rows: Vec<Vec<Fe>> = entries
                .chunks(3)
                .map(|r| r.iter().map(|&(n, d)| {
                    let d = if p != 0 && d % p as i64 == 0 { 1 } else { d };
                    field.from_rational(&num_rational::BigRational::new(n.into(), d.into())).unwrap()
                }).collect())
                .collect();
            let m = Matrix::from_rows(&field, rows).unwrap();
            prop_assert_eq!(matrix_from_json(&field, &matrix_to_json(&m)).unwrap(), m);
        }
    }

    #[test]
    fn rational_entries_are_strings_and_residues_are_integers() {
        let q = Matrix::from_i64(&Field::Rational, &[&[1, -2], &[0, 3]]);
        assert_eq!(matrix_to_json(&q).to_string(), r#"[["1","-2"],["0","3"]]"#);
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_i64(&f, &[&[1, -2], &[0, 3]]);
        assert_eq!(matrix_to_json(&m).to_string(), "[[1,5],[0,3]]");
    }
}
