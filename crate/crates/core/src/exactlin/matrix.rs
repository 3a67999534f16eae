//! Dense matrices over an exact field and Gauss–Jordan elimination.

use std::hash::{Hash, Hasher};

use rand::RngCore;

use super::field::Field;

/// A dense row-major matrix over `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|x| field.from_i64(*x)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn random(field: &F, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random_elem(rng))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    out.data[base + j] = f.mul_add(&out.data[base + j], a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|f, x| f.neg(x))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|f, x| f.mul(c, x))
    }

    pub fn map(&self, g: impl Fn(&F, &F::Elem) -> F::Elem) -> Self {
        let data = self.data.iter().map(|x| g(&self.field, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn hstack(field: &F, rows: usize, parts: &[&Self]) -> Self {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(field: &F, cols: usize, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(field: &F, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan elimination in place; returns the pivot columns. The
    /// result is the reduced row echelon form.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(&inv, self.get(r, j));
                self.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let base = i * self.cols;
                for (k, pv) in pivot_row.iter().enumerate() {
                    let idx = base + c + k;
                    let t = f.mul(&factor, pv);
                    self.data[idx] = f.sub(&self.data[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    /// Row echelon form without back substitution; cheaper when only the rank is needed.
    fn echelon_rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).unwrap();
            let pivot_row: Vec<F::Elem> = m.row(r)[c..].iter().map(|x| f.mul(&inv, x)).collect();
            for i in r + 1..m.rows {
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let base = i * m.cols;
                for (k, pv) in pivot_row.iter().enumerate() {
                    let idx = base + c + k;
                    let t = f.mul(&factor, pv);
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
            r += 1;
        }
        r
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.echelon_rank()
        } else {
            self.transpose().echelon_rank()
        }
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let f = &self.field;
        let col = Self::from_fn(f, self.rows, 1, |i, _| b[i].clone());
        let aug = Self::hstack(f, self.rows, &[self, &col]);
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::hstack(f, n, &[self, &Self::identity(f, n)]);
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(m.block(0, n, n, n))
    }

    /// Indices of a maximal set of linearly independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space, taken from the columns of `self`.
    pub fn column_space_basis(&self) -> Vec<Vec<F::Elem>> {
        self.pivot_columns().into_iter().map(|c| self.column(c)).collect()
    }
}

/// Rank of a matrix over its field.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

/// A basis of the right null space of `m`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    m.kernel_basis()
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    m.solve(b)
}

/// Coordinates for a quotient `Z / B` of subspaces of `F^n`, with `B ⊆ Z`.
///
/// `reps` is a basis of a complement of `B` in `Z`; `coords` expresses a
/// vector of `Z` modulo `B` in that basis.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    field: F,
    ambient: usize,
    reps: Vec<Vec<F::Elem>>,
    left_inverse: Matrix<F>,
}

impl<F: Field> Subquotient<F> {
    /// `cycles` spans Z, `boundaries` spans B; both may be redundant.
    pub fn new(field: &F, ambient: usize, cycles: &[Vec<F::Elem>], boundaries: &[Vec<F::Elem>]) -> Self {
        let bmat = Matrix::from_columns(field, ambient, boundaries);
        let bbasis = bmat.column_space_basis();
        let mut all = bbasis.clone();
        all.extend(cycles.iter().cloned());
        let joint = Matrix::from_columns(field, ambient, &all);
        let piv = joint.pivot_columns();
        let nb = bbasis.len();
        debug_assert!(piv.iter().take(nb).copied().eq(0..nb));
        let reps: Vec<Vec<F::Elem>> = piv.iter().filter(|&&c| c >= nb).map(|&c| all[c].clone()).collect();
        let mut basis = reps.clone();
        basis.extend(bbasis);
        let z = basis.len();
        let w = Matrix::from_columns(field, ambient, &basis);
        let aug = Matrix::hstack(field, ambient, &[&w, &Matrix::identity(field, ambient)]);
        let (m, _) = aug.rref();
        let left_inverse = m.block(0, z, z, ambient);
        Subquotient { field: field.clone(), ambient, reps, left_inverse }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[Vec<F::Elem>] {
        &self.reps
    }

    /// Coordinates of the class of `v` (assumed to lie in Z).
    pub fn coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let full = self.left_inverse.mul_vec(v);
        full[..self.reps.len()].to_vec()
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f5();
        assert_eq!(Matrix::zeros(&f, 0, 0).rank(), 0);
        assert_eq!(Matrix::identity(&f, 3).rank(), 3);
        assert_eq!(Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(&f5(), 2).kernel_basis().is_empty());
        let f2 = PrimeField::new(2).unwrap();
        let k = Matrix::from_i64(&f2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.solve(&[1, 2, 3]), Some(vec![1, 2, 3]));
        assert_eq!(Matrix::zeros(&f, 2, 2).solve(&[1, 0]), None);
        let m = Matrix::from_i64(&f, &[&[1, 1], &[0, 0]]);
        let x = m.solve(&[2, 0]).unwrap();
        assert_eq!(f.add(&x[0], &x[1]), 2);
    }

    #[test]
    fn random_kernel_dimension() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = Matrix::random(&f, 4, 6, &mut rng);
            let k = m.kernel_basis();
            assert_eq!(k.len(), 6 - m.rank());
            for v in &k {
                assert!(m.mul_vec(v).iter().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn inverse_over_q() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&q, 2));
        assert!(Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subquotient_coordinates() {
        let f = f5();
        // Z = span(e0, e1), B = span(e0 + e1) inside F^3
        let z = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![1, 1, 0]];
        let sq = Subquotient::new(&f, 3, &z, &b);
        assert_eq!(sq.dim(), 1);
        let c0 = sq.coords(&[1, 0, 0]);
        let c1 = sq.coords(&[0, 1, 0]);
        assert_eq!(f.add(&c0[0], &c1[0]), 0);
        assert_eq!(sq.coords(&[1, 1, 0]), vec![0]);
    }
}
