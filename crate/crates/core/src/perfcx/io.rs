//! JSON form of complexes:
//! `{algebra, field, ranks: {deg: count}, diffs: {deg: [[entry]]}}`, plus
//! `modulus` for quotient rings. Dual-number entries are `[a, b]`, polynomial
//! entries are coefficient lists with the constant term first.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::complex::PerfectComplex;
use super::PerfcxError;
use crate::coeffalg::{AlgMatrix, AlgebraKind, CoeffAlgebra};
use crate::exactlin::{Field, PrimeField, Rationals};

/// Fields that can be named in a complex file.
pub trait FieldSpec: Field + Sized {
    fn spec_to_json(&self) -> Value;
    fn spec_from_json(v: &Value) -> Result<Self, PerfcxError>;
}

impl FieldSpec for PrimeField {
    fn spec_to_json(&self) -> Value {
        json!(self.modulus())
    }
    fn spec_from_json(v: &Value) -> Result<Self, PerfcxError> {
        let p = v.as_u64().ok_or_else(|| PerfcxError::Json(format!("field must be a prime number, got {v}")))?;
        PrimeField::new(p).map_err(|e| PerfcxError::Json(e.to_string()))
    }
}

impl FieldSpec for Rationals {
    fn spec_to_json(&self) -> Value {
        json!("Q")
    }
    fn spec_from_json(v: &Value) -> Result<Self, PerfcxError> {
        match v.as_str() {
            Some("Q") => Ok(Rationals),
            _ => Err(PerfcxError::Json(format!("expected \"Q\", got {v}"))),
        }
    }
}

pub fn complex_to_json<F: FieldSpec>(x: &PerfectComplex<F>) -> Value {
    let alg = x.algebra();
    let f = alg.field();
    let mut doc = Map::new();
    let kind = match alg.kind() {
        AlgebraKind::DualNumbers => "dual_numbers",
        AlgebraKind::PolyRing => "poly_ring",
        AlgebraKind::PolyQuotient(m) => {
            doc.insert("modulus".into(), Value::Array(m.iter().map(|c| f.elem_to_json(c)).collect()));
            "poly_quotient"
        }
    };
    doc.insert("algebra".into(), json!(kind));
    doc.insert("field".into(), f.spec_to_json());
    let ranks: Map<String, Value> = x.ranks().iter().map(|(i, r)| (i.to_string(), json!(r))).collect();
    doc.insert("ranks".into(), Value::Object(ranks));
    let diffs: Map<String, Value> = x
        .diffs()
        .iter()
        .map(|(i, d)| {
            let rows: Vec<Value> = (0..d.rows())
                .map(|r| Value::Array((0..d.cols()).map(|c| alg.elem_to_json(d.get(r, c))).collect()))
                .collect();
            (i.to_string(), Value::Array(rows))
        })
        .collect();
    doc.insert("diffs".into(), Value::Object(diffs));
    Value::Object(doc)
}

fn degree(key: &str) -> Result<i32, PerfcxError> {
    key.parse().map_err(|_| PerfcxError::Json(format!("degree keys must be integers, got {key:?}")))
}

/// Parses and validates a complex.
pub fn complex_from_json<F: FieldSpec>(v: &Value) -> Result<PerfectComplex<F>, PerfcxError> {
    let obj = v.as_object().ok_or_else(|| PerfcxError::Json("top level must be an object".into()))?;
    let get = |k: &str| obj.get(k).ok_or_else(|| PerfcxError::Json(format!("missing field {k:?}")));
    let field = F::spec_from_json(get("field")?)?;
    let alg = match get("algebra")?.as_str() {
        Some("dual_numbers") => CoeffAlgebra::dual_numbers(&field),
        Some("poly_ring") => CoeffAlgebra::poly_ring(&field),
        Some("poly_quotient") => {
            let m = get("modulus")?
                .as_array()
                .ok_or_else(|| PerfcxError::Json("modulus must be a coefficient list".into()))?
                .iter()
                .map(|c| field.elem_from_json(c).map_err(|e| PerfcxError::Json(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            CoeffAlgebra::poly_quotient(&field, m)?
        }
        _ => return Err(PerfcxError::Json(format!("unknown algebra {}", get("algebra")?))),
    };
    let mut ranks = BTreeMap::new();
    for (k, r) in get("ranks")?.as_object().ok_or_else(|| PerfcxError::Json("ranks must be an object".into()))? {
        let r = r.as_u64().ok_or_else(|| PerfcxError::Json(format!("rank in degree {k} is not a count")))?;
        ranks.insert(degree(k)?, r as usize);
    }
    let mut diffs = BTreeMap::new();
    let empty = Map::new();
    let dobj = match obj.get("diffs") {
        Some(d) => d.as_object().ok_or_else(|| PerfcxError::Json("diffs must be an object".into()))?,
        None => &empty,
    };
    for (k, rows) in dobj {
        let i = degree(k)?;
        let rows = rows.as_array().ok_or_else(|| PerfcxError::Json(format!("diff {k} must be a list of rows")))?;
        let nrows = rows.len();
        let ncols = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
        let mut m = AlgMatrix::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| PerfcxError::Json(format!("diff {k} row {r} is not a list")))?;
            if row.len() != ncols {
                return Err(PerfcxError::Json(format!("diff {k} is ragged")));
            }
            for (c, e) in row.iter().enumerate() {
                m.set(&alg, r, c, alg.elem_from_json(e)?);
            }
        }
        diffs.insert(i, m);
    }
    PerfectComplex::new(&alg, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_dual_numbers() {
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::dual_numbers(&f);
        let x = PerfectComplex::string(&a, -1, 2).direct_sum(&PerfectComplex::string(&a, 0, 0));
        let v = complex_to_json(&x);
        let s = serde_json::to_string_pretty(&v).unwrap();
        let y: PerfectComplex<PrimeField> = complex_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string_pretty(&complex_to_json(&y)).unwrap(), s);
        assert_eq!(v["diffs"]["-1"], json!([[[0, 1]], [[0, 0]]]));
    }

    #[test]
    fn round_trip_rational_quotient() {
        let q = Rationals;
        let a = CoeffAlgebra::poly_quotient(&q, crate::exactlin::poly::from_i64s(&q, &[0, 0, 0, 1])).unwrap();
        let x = PerfectComplex::string(&a, 0, 1);
        let v = complex_to_json(&x);
        let y: PerfectComplex<Rationals> = complex_from_json(&v).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn corrupted_square_rejected() {
        let doc = json!({
            "algebra": "dual_numbers", "field": 5,
            "ranks": {"0": 1, "1": 1, "2": 1},
            "diffs": {"0": [[[1, 0]]], "1": [[[0, 1]]]}
        });
        let r: Result<PerfectComplex<PrimeField>, _> = complex_from_json(&doc);
        assert_eq!(r.unwrap_err(), PerfcxError::NotAComplex { degree: 0, row: 0, col: 0 });
    }
}
