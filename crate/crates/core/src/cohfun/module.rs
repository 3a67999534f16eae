//! Finite-dimensional modules over the coefficient algebra, and Hom from a
//! perfect complex into such a module placed in degree 0.

use std::collections::BTreeMap;

use super::CohfunError;
use crate::coeffalg::{end_algebra_as_table, AlgebraKind, AlgebraModule, CoeffAlgebra, FinDimAlgebra, PrimeDatum};
use crate::exactlin::{Field, Matrix, Poly, Subquotient};
use crate::perfcx::PerfectComplex;

/// k^m with the generator x of the coefficient algebra acting by `action`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinModule<F: Field> {
    alg: CoeffAlgebra<F>,
    action: Matrix<F>,
}

pub(crate) fn poly_at_matrix<F: Field>(f: &F, p: &Poly<F>, t: &Matrix<F>) -> Matrix<F> {
    let n = t.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for c in p.iter().rev() {
        acc = acc.mul(t).add(&Matrix::identity(f, n).scale(c));
    }
    acc
}

impl<F: Field> FinModule<F> {
    /// Checks that the modulus of a quotient algebra annihilates the module.
    pub fn new(alg: &CoeffAlgebra<F>, action: Matrix<F>) -> Result<Self, CohfunError> {
        if action.rows() != action.cols() {
            return Err(CohfunError::NotAModule("action must be square".into()));
        }
        if let Some(m) = alg.modulus() {
            if !poly_at_matrix(alg.field(), m, &action).is_zero() {
                return Err(CohfunError::NotAModule(format!("modulus of {} does not annihilate", alg.name())));
            }
        }
        Ok(FinModule { alg: alg.clone(), action })
    }

    /// The residue field k(p) as a module: the companion matrix of the prime.
    pub fn residue(alg: &CoeffAlgebra<F>, p: &PrimeDatum<F>) -> Result<Self, CohfunError> {
        let f = alg.field();
        match (alg.kind(), p) {
            (AlgebraKind::DualNumbers, PrimeDatum::DualMaximal) => Self::new(alg, Matrix::zeros(f, 1, 1)),
            (AlgebraKind::PolyRing, PrimeDatum::Principal(g)) => {
                let g = match PrimeDatum::principal(f, g.clone())? {
                    PrimeDatum::Principal(g) => g,
                    _ => unreachable!(),
                };
                let d = g.len() - 1;
                let mut t = Matrix::zeros(f, d, d);
                for i in 1..d {
                    t.set(i, i - 1, f.one());
                }
                for i in 0..d {
                    t.set(i, d - 1, f.neg(&g[i]));
                }
                Self::new(alg, t)
            }
            (AlgebraKind::PolyRing, PrimeDatum::Zero) => {
                Err(CohfunError::Unsupported("k(x) is infinite-dimensional; use the residue label".into()))
            }
            _ => Err(CohfunError::Unsupported(format!("{} is not a prime of {}", p.label(f), alg.name()))),
        }
    }

    pub fn algebra(&self) -> &CoeffAlgebra<F> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &Matrix<F> {
        &self.action
    }

    /// Basis of End_A(M), the commutant of the action.
    pub fn endomorphisms(&self) -> Vec<Matrix<F>> {
        let f = self.alg.field();
        let m = self.dim();
        let t = &self.action;
        let mut sys = Matrix::zeros(f, m * m, m * m);
        for i in 0..m {
            for j in 0..m {
                let row = i * m + j;
                for k in 0..m {
                    // (XT - TX)_{ij}
                    let a = f.add(sys.get(row, i * m + k), t.get(k, j));
                    sys.set(row, i * m + k, a);
                    let b = f.sub(sys.get(row, k * m + j), t.get(i, k));
                    sys.set(row, k * m + j, b);
                }
            }
        }
        sys.kernel_basis().into_iter().map(|v| Matrix::from_rows(f, m, v.chunks(m.max(1)).map(|r| r.to_vec()).collect())).collect()
    }

    /// End_A(M) as a structure-constant algebra, with its basis.
    pub fn end_algebra(&self) -> Result<(FinDimAlgebra<F>, Vec<Matrix<F>>), CohfunError> {
        let f = self.alg.field();
        let m = self.dim();
        let basis = self.endomorphisms();
        let flat: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.data().to_vec()).collect();
        let sq = Subquotient::new(f, m * m, &flat, &[]);
        let unit = sq.coords(Matrix::identity(f, m).data());
        let alg = end_algebra_as_table(f, basis.len(), |a, b| sq.coords(basis[a].mul(&basis[b]).data()), unit)?;
        Ok((alg, basis))
    }

    /// Differentials of Hom_A(C, M): Hom^n = M^{rank C^{-n}} and
    /// D^n: Hom^n → Hom^{n+1} is precomposition with d^{-n-1}.
    pub(crate) fn hom_diffs(&self, c: &PerfectComplex<F>) -> BTreeMap<i32, Matrix<F>> {
        let f = self.alg.field();
        let m = self.dim();
        let mut out = BTreeMap::new();
        for (&i, d) in c.diffs() {
            // d = d^i: C^i → C^{i+1}, Hom^{-i-1} → Hom^{-i}
            let mut big = Matrix::zeros(f, m * d.cols(), m * d.rows());
            for j in 0..d.rows() {
                for l in 0..d.cols() {
                    let e = d.get(j, l);
                    if e.is_empty() {
                        continue;
                    }
                    big.set_block(l * m, j * m, &poly_at_matrix(f, e, &self.action));
                }
            }
            out.insert(-i - 1, big);
        }
        out
    }

    /// H^n(Hom_A(C, M)) for every n with nonzero cohomology, with End_A(M)
    /// acting through `basis`.
    pub(crate) fn hom_cohomology(&self, c: &PerfectComplex<F>, basis: &[Matrix<F>]) -> BTreeMap<i32, AlgebraModule<F>> {
        let f = self.alg.field();
        let m = self.dim();
        let diffs = self.hom_diffs(c);
        let mut out = BTreeMap::new();
        for (&deg, &r) in c.ranks() {
            let n = -deg;
            let amb = m * r;
            let cycles = match diffs.get(&n) {
                Some(d) => d.kernel_basis(),
                None => (0..amb)
                    .map(|i| {
                        let mut v = vec![f.zero(); amb];
                        v[i] = f.one();
                        v
                    })
                    .collect(),
            };
            let bounds = diffs.get(&(n - 1)).map(|d| d.column_space_basis()).unwrap_or_default();
            let h = Subquotient::new(f, amb, &cycles, &bounds);
            if h.dim() == 0 {
                continue;
            }
            let action = basis
                .iter()
                .map(|phi| {
                    let big = Matrix::block_diag(f, &vec![phi; r]);
                    let cols: Vec<Vec<F::Elem>> = h.reps().iter().map(|v| h.coords(&big.mul_vec(v))).collect();
                    Matrix::from_columns(f, h.dim(), &cols)
                })
                .collect();
            out.insert(n, AlgebraModule::new_unchecked(f, h.dim(), action));
        }
        out
    }
}
