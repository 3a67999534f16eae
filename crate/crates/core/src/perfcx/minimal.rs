//! Minimal models over local coefficient algebras.

use std::collections::BTreeMap;

use super::complex::{ChainMap, PerfectComplex};
use super::PerfcxError;
use crate::coeffalg::AlgMatrix;
use crate::exactlin::Field;

/// A minimal complex homotopy equivalent to the input, with the inclusion
/// ι: X_min → X and projection π: X → X_min (π∘ι = id).
#[derive(Clone, Debug)]
pub struct MinimalModel<F: Field> {
    pub complex: PerfectComplex<F>,
    pub inclusion: ChainMap<F>,
    pub projection: ChainMap<F>,
}

/// Splits off contractible summands A --u--> A at unit entries u until every
/// differential entry lies in the maximal ideal.
pub fn minimal_model<F: Field>(x: &PerfectComplex<F>) -> Result<MinimalModel<F>, PerfcxError> {
    let alg = x.algebra();
    if alg.maximal_ideal_generator().is_none() {
        return Err(PerfcxError::NotLocal);
    }
    let mut ranks = x.ranks().clone();
    let mut d: BTreeMap<i32, AlgMatrix<F>> = x.diffs().clone();
    // J^i: current basis in original coordinates; K^i its left inverse
    let mut j: BTreeMap<i32, AlgMatrix<F>> = ranks.iter().map(|(&i, &r)| (i, AlgMatrix::identity(alg, r))).collect();
    let mut k = j.clone();

    loop {
        let pivot = d.iter().find_map(|(&i, m)| {
            (0..m.rows()).find_map(|r| (0..m.cols()).find(|&c| alg.is_unit(m.get(r, c))).map(|c| (i, r, c)))
        });
        let Some((i, r, c)) = pivot else { break };
        let uinv = alg.inverse(d[&i].get(r, c)).unwrap();

        // clear column c of d^i: basis change in X^{i+1}
        let rows = d[&i].rows();
        for row in 0..rows {
            if row == r || d[&i].get(row, c).is_empty() {
                continue;
            }
            let b = alg.mul(d[&i].get(row, c), &uinv);
            let nb = alg.neg(&b);
            d.get_mut(&i).unwrap().add_row_multiple(alg, row, r, &nb);
            if let Some(next) = d.get_mut(&(i + 1)) {
                next.add_col_multiple(alg, r, row, &b);
            }
            j.get_mut(&(i + 1)).unwrap().add_col_multiple(alg, r, row, &b);
            k.get_mut(&(i + 1)).unwrap().add_row_multiple(alg, row, r, &nb);
        }
        // clear row r of d^i: basis change in X^i
        let cols = d[&i].cols();
        for col in 0..cols {
            if col == c || d[&i].get(r, col).is_empty() {
                continue;
            }
            let a = alg.mul(d[&i].get(r, col), &uinv);
            let na = alg.neg(&a);
            d.get_mut(&i).unwrap().add_col_multiple(alg, col, c, &na);
            if let Some(prev) = d.get_mut(&(i - 1)) {
                prev.add_row_multiple(alg, c, col, &a);
            }
            j.get_mut(&i).unwrap().add_col_multiple(alg, col, c, &na);
            k.get_mut(&i).unwrap().add_row_multiple(alg, c, col, &a);
        }
        // d^{i+1} now vanishes on basis vector r and d^{i−1} misses c
        debug_assert!(d.get(&(i + 1)).is_none_or(|m| (0..m.rows()).all(|q| m.get(q, r).is_empty())));
        debug_assert!(d.get(&(i - 1)).is_none_or(|m| (0..m.cols()).all(|q| m.get(c, q).is_empty())));
        let m = d.get_mut(&i).unwrap();
        m.remove_row(r);
        m.remove_col(c);
        if let Some(next) = d.get_mut(&(i + 1)) {
            next.remove_col(r);
        }
        if let Some(prev) = d.get_mut(&(i - 1)) {
            prev.remove_row(c);
        }
        j.get_mut(&i).unwrap().remove_col(c);
        j.get_mut(&(i + 1)).unwrap().remove_col(r);
        k.get_mut(&i).unwrap().remove_row(c);
        k.get_mut(&(i + 1)).unwrap().remove_row(r);
        *ranks.get_mut(&i).unwrap() -= 1;
        *ranks.get_mut(&(i + 1)).unwrap() -= 1;
        // drop differentials touching a vanished degree
        d.retain(|deg, m| m.rows() > 0 && m.cols() > 0 && ranks[deg] > 0);
    }

    let complex = PerfectComplex::new_unchecked(alg, ranks, d)?;
    let inclusion = ChainMap::new_unchecked(&complex, x, j)?;
    let projection = ChainMap::new_unchecked(x, &complex, k)?;
    Ok(MinimalModel { complex, inclusion, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::CoeffAlgebra;
    use crate::exactlin::PrimeField;
    use crate::perfcx::cone;

    fn dual() -> CoeffAlgebra<PrimeField> {
        CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap())
    }

    #[test]
    fn spec_examples() {
        let a = dual();
        let x0 = PerfectComplex::string(&a, 0, 0);
        let c = cone(&ChainMap::identity(&x0)).unwrap().c;
        assert!(minimal_model(&c).unwrap().complex.is_zero());
        let x = PerfectComplex::string(&a, 1, 3);
        assert_eq!(minimal_model(&x).unwrap().complex, x);
        let m = minimal_model(&x0.direct_sum(&c)).unwrap();
        assert_eq!(m.complex, x0);
    }

    #[test]
    fn inclusion_and_projection_are_inverse_equivalences() {
        let a = dual();
        let x = PerfectComplex::string(&a, 0, 2);
        let f = ChainMap::scalar(&x, &a.gen());
        let big = cone(&ChainMap::identity(&x)).unwrap().c.direct_sum(&cone(&f).unwrap().c);
        let m = minimal_model(&big).unwrap();
        assert!(m.inclusion.validate().is_ok());
        assert!(m.projection.validate().is_ok());
        assert_eq!(m.projection.compose_after(&m.inclusion), ChainMap::identity(&m.complex));
        assert!(m.complex.diffs().values().all(|d| d.constant_part(a.field()).is_zero()));
    }

    #[test]
    fn non_local_rejected() {
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::poly_ring(&f);
        assert_eq!(minimal_model(&PerfectComplex::zero(&a)).unwrap_err(), PerfcxError::NotLocal);
    }
}
