//! Finite-dimensional associative algebras given by structure constants.

use super::AlgebraError;
use crate::exactlin::{Field, Matrix, Subquotient};

/// An associative unital algebra with basis e_0..e_{n-1}; `mult` holds the
/// coordinates of e_a·e_b at `(a·n + b)·n ..`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinDimAlgebra<F: Field> {
    field: F,
    dim: usize,
    mult: Vec<F::Elem>,
    unit: Vec<F::Elem>,
}

impl<F: Field> FinDimAlgebra<F> {
    /// Checks associativity on all basis triples and that `unit` is a two-sided unit.
    pub fn new(field: &F, dim: usize, mult: Vec<F::Elem>, unit: Vec<F::Elem>) -> Result<Self, AlgebraError> {
        assert_eq!(mult.len(), dim * dim * dim, "structure constant table has the wrong size");
        assert_eq!(unit.len(), dim, "unit has the wrong length");
        let alg = FinDimAlgebra { field: field.clone(), dim, mult, unit };
        alg.check_associative()?;
        for a in 0..dim {
            let ea = alg.basis(a);
            if alg.mul(&alg.unit, &ea) != ea || alg.mul(&ea, &alg.unit) != ea {
                return Err(AlgebraError::BadUnit);
            }
        }
        Ok(alg)
    }

    /// The field itself as a 1-dimensional algebra.
    pub fn base(field: &F) -> Self {
        FinDimAlgebra { field: field.clone(), dim: 1, mult: vec![field.one()], unit: vec![field.one()] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn basis(&self, a: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[a] = self.field.one();
        v
    }

    /// Coordinates of e_a·e_b.
    pub fn product_of_basis(&self, a: usize, b: usize) -> &[F::Elem] {
        let n = self.dim;
        &self.mult[(a * n + b) * n..(a * n + b + 1) * n]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if f.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if f.is_zero(yb) {
                    continue;
                }
                let c = f.mul(xa, yb);
                for (k, t) in self.product_of_basis(a, b).iter().enumerate() {
                    if !f.is_zero(t) {
                        out[k] = f.mul_add(&out[k], &c, t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u128) -> Vec<F::Elem> {
        let mut base = x.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of y ↦ x·y in the basis.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|b| self.mul(x, &self.basis(b))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of y ↦ y·x in the basis.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|b| self.mul(&self.basis(b), x)).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Trace of left multiplication by each basis element.
    pub fn basis_traces(&self) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.dim)
            .map(|k| (0..self.dim).fold(f.zero(), |acc, j| f.add(&acc, &self.product_of_basis(k, j)[j])))
            .collect()
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let n = self.dim;
        // sparse supports of each product e_a e_b
        let support: Vec<Vec<usize>> = (0..n * n)
            .map(|ab| (0..n).filter(|&k| !f.is_zero(&self.mult[ab * n + k])).collect())
            .collect();
        let mut lhs = vec![f.zero(); n];
        let mut rhs = vec![f.zero(); n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    lhs.iter_mut().for_each(|x| *x = f.zero());
                    rhs.iter_mut().for_each(|x| *x = f.zero());
                    for &k in &support[a * n + b] {
                        let s = &self.mult[(a * n + b) * n + k];
                        for &m in &support[k * n + c] {
                            lhs[m] = f.mul_add(&lhs[m], s, &self.mult[(k * n + c) * n + m]);
                        }
                    }
                    for &k in &support[b * n + c] {
                        let s = &self.mult[(b * n + c) * n + k];
                        for &m in &support[a * n + k] {
                            rhs[m] = f.mul_add(&rhs[m], s, &self.mult[(a * n + k) * n + m]);
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the span of `basis` is a two-sided ideal.
    pub fn is_two_sided_ideal(&self, basis: &[Vec<F::Elem>]) -> bool {
        let span = Matrix::from_columns(&self.field, self.dim, basis);
        let r = span.rank();
        for v in basis {
            for b in 0..self.dim {
                let e = self.basis(b);
                for w in [self.mul(&e, v), self.mul(v, &e)] {
                    let mut cols = basis.to_vec();
                    cols.push(w);
                    if Matrix::from_columns(&self.field, self.dim, &cols).rank() != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The quotient by a two-sided ideal together with the coordinate map.
    pub fn quotient(&self, ideal: &[Vec<F::Elem>]) -> (FinDimAlgebra<F>, Subquotient<F>) {
        let f = &self.field;
        let all: Vec<Vec<F::Elem>> = (0..self.dim).map(|a| self.basis(a)).collect();
        let sq = Subquotient::new(f, self.dim, &all, ideal);
        let m = sq.dim();
        let reps = sq.reps().to_vec();
        let mut mult = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                mult.extend(sq.coords(&self.mul(&reps[a], &reps[b])));
            }
        }
        let unit = sq.coords(&self.unit);
        (FinDimAlgebra { field: f.clone(), dim: m, mult, unit }, sq)
    }

    /// Basis of the centre.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.dim;
        // rows indexed by (b, k): coefficient of e_k in z e_b - e_b z
        let m = Matrix::from_fn(f, n * n, n, |row, a| {
            let (b, k) = (row / n, row % n);
            f.sub(&self.product_of_basis(a, b)[k], &self.product_of_basis(b, a)[k])
        });
        m.kernel_basis()
    }

    /// Dimension of the span of the given vectors.
    pub fn span_dim(&self, vecs: &[Vec<F::Elem>]) -> usize {
        Matrix::from_columns(&self.field, self.dim, vecs).rank()
    }
}

/// Packages an endomorphism space into a structure-constant table. `compose(a, b)`
/// returns the coordinates of basis element a composed after basis element b;
/// `unit` gives the coordinates of the identity.
pub fn end_algebra_as_table<F: Field>(
    field: &F,
    dim: usize,
    compose: impl Fn(usize, usize) -> Vec<F::Elem>,
    unit: Vec<F::Elem>,
) -> Result<FinDimAlgebra<F>, AlgebraError> {
    let mut mult = Vec::with_capacity(dim * dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let c = compose(a, b);
            assert_eq!(c.len(), dim, "composition returned wrong coordinate length");
            mult.extend(c);
        }
    }
    FinDimAlgebra::new(field, dim, mult, unit)
}

/// Full matrix algebra M_n(k) with matrix units as basis.
pub fn matrix_algebra<F: Field>(field: &F, n: usize) -> FinDimAlgebra<F> {
    let dim = n * n;
    let unit = (0..dim).map(|ij| if ij / n == ij % n { field.one() } else { field.zero() }).collect();
    end_algebra_as_table(
        field,
        dim,
        |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = vec![field.zero(); dim];
            if j == k {
                v[i * n + l] = field.one();
            }
            v
        },
        unit,
    )
    .expect("matrix units form an associative algebra")
}

/// The subalgebra of upper-triangular n×n matrices, basis E_ij with i ≤ j.
pub fn upper_triangular<F: Field>(field: &F, n: usize) -> FinDimAlgebra<F> {
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let dim = idx.len();
    let pos = |i: usize, j: usize| idx.iter().position(|&p| p == (i, j)).unwrap();
    let unit = idx.iter().map(|&(i, j)| if i == j { field.one() } else { field.zero() }).collect();
    end_algebra_as_table(
        field,
        dim,
        |a, b| {
            let (i, j) = idx[a];
            let (k, l) = idx[b];
            let mut v = vec![field.zero(); dim];
            if j == k {
                v[pos(i, l)] = field.one();
            }
            v
        },
        unit,
    )
    .expect("upper-triangular matrices form an associative algebra")
}

/// k[x]/(f) in the monomial basis.
pub fn truncated_poly_algebra<F: Field>(field: &F, f: &[F::Elem]) -> FinDimAlgebra<F> {
    use crate::coeffalg::CoeffAlgebra;
    let alg = CoeffAlgebra::poly_quotient(field, f.to_vec()).expect("monic modulus");
    let table = alg.reduction_table();
    let dim = alg.dim().unwrap();
    end_algebra_as_table(field, dim, |a, b| table[a + b].clone(), alg.power_coords(0)).expect("commutative algebra")
}

/// Direct product of algebras, basis the disjoint union.
pub fn product<F: Field>(parts: &[&FinDimAlgebra<F>]) -> FinDimAlgebra<F> {
    let field = parts[0].field.clone();
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let offsets: Vec<usize> = parts.iter().scan(0, |acc, p| {
        let o = *acc;
        *acc += p.dim;
        Some(o)
    }).collect();
    let locate = |a: usize| {
        let i = offsets.iter().rposition(|&o| o <= a).unwrap();
        (i, a - offsets[i])
    };
    let mut unit = Vec::with_capacity(dim);
    for p in parts {
        unit.extend(p.unit.iter().cloned());
    }
    end_algebra_as_table(
        &field,
        dim,
        |a, b| {
            let (i, x) = locate(a);
            let (j, y) = locate(b);
            let mut v = vec![field.zero(); dim];
            if i == j {
                for (k, c) in parts[i].product_of_basis(x, y).iter().enumerate() {
                    v[offsets[i] + k] = c.clone();
                }
            }
            v
        },
        unit,
    )
    .expect("products of algebras are algebras")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    #[test]
    fn non_associative_table_is_rejected() {
        let f = PrimeField::new(5).unwrap();
        // basis {1, u} with u·u = 1 + u
        let mult = vec![1, 0, 0, 1, 0, 1, 1, 1];
        assert!(FinDimAlgebra::new(&f, 2, mult.clone(), vec![1, 0]).is_ok());
        assert_eq!(FinDimAlgebra::new(&f, 2, mult, vec![0, 1]).unwrap_err(), AlgebraError::BadUnit);
        // basis {1, a, b} with a·a = b, a·b = a and everything else zero: (aa)b = 0 but a(ab) = b
        let table = |x: usize, y: usize| -> Vec<u64> {
            match (x, y) {
                (0, k) | (k, 0) => {
                    let mut v = vec![0; 3];
                    v[k] = 1;
                    v
                }
                (1, 1) => vec![0, 0, 1],
                (1, 2) => vec![0, 1, 0],
                _ => vec![0, 0, 0],
            }
        };
        match end_algebra_as_table(&f, 3, table, vec![1, 0, 0]) {
            Err(AlgebraError::NonAssociative { .. }) => {}
            other => panic!("expected a violating triple, got {other:?}"),
        }
    }

    #[test]
    fn centre_of_matrix_algebra_is_scalars() {
        let f = PrimeField::new(3).unwrap();
        let m = matrix_algebra(&f, 2);
        assert_eq!(m.center().len(), 1);
        let u = upper_triangular(&f, 2);
        assert_eq!(u.dim(), 3);
        assert_eq!(u.center().len(), 1);
    }

    #[test]
    fn dual_number_table() {
        let f = PrimeField::new(5).unwrap();
        let d = truncated_poly_algebra(&f, &[0, 0, 1]);
        assert_eq!(d.product_of_basis(1, 1), &[0, 0]);
        assert_eq!(d.product_of_basis(0, 1), &[0, 1]);
        assert_eq!(end_algebra_as_table(&f, 1, |_, _| vec![1], vec![1]).unwrap().dim(), 1);
    }
}
