//! Matrices over a polynomial ring k[x] and fraction-free (Bareiss) elimination.

use rand::{Rng, RngCore};

use super::field::Field;
use super::matrix::Matrix;
use super::poly::{self, Poly};

/// A dense matrix with entries in k[x].
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        PolyMatrix { field: field.clone(), rows, cols, data: vec![Vec::new(); rows * cols] }
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly<F>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(poly::trim(field, f(i, j)));
            }
        }
        PolyMatrix { field: field.clone(), rows, cols, data }
    }

    /// Entries given as coefficient lists (low degree first).
    pub fn from_i64(field: &F, rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| poly::from_i64s(field, rows[i][j]))
    }

    /// Random entries of degree at most `max_deg`.
    pub fn random(field: &F, rows: usize, cols: usize, max_deg: usize, rng: &mut dyn RngCore) -> Self {
        Self::from_fn(field, rows, cols, |_, _| {
            let d = rng.gen_range(0..=max_deg);
            (0..=d).map(|_| field.random_elem(rng)).collect()
        })
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
    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Poly<F>) {
        self.data[i * self.cols + j] = poly::trim(&self.field, v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_empty())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(poly::degree::<F>).max()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        Self::from_fn(f, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Vec::new(), |acc, k| {
                poly::add(f, &acc, &poly::mul(f, self.get(i, k), other.get(k, j)))
            })
        })
    }

    /// Entrywise evaluation into a field `G` through a coefficient embedding.
    pub fn eval_in<G: Field>(&self, g: &G, embed: impl Fn(&F::Elem) -> G::Elem, point: &G::Elem) -> Matrix<G> {
        Matrix::from_fn(g, self.rows, self.cols, |i, j| poly::eval_in::<F, G>(g, self.get(i, j), &embed, point))
    }

    pub fn eval(&self, point: &F::Elem) -> Matrix<F> {
        let f = &self.field;
        Matrix::from_fn(f, self.rows, self.cols, |i, j| poly::eval(f, self.get(i, j), point))
    }

    /// Bareiss elimination with full pivoting on a copy; returns the rank and
    /// the final leading pivot (the determinant up to sign when square and of
    /// full rank).
    fn bareiss(&self) -> (usize, Poly<F>) {
        let f = &self.field;
        let mut m: Vec<Vec<Poly<F>>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev: Poly<F> = poly::constant(f, f.one());
        let mut rank = 0;
        let mut sign_flip = false;
        for k in 0..self.rows.min(self.cols) {
            // pick the nonzero entry of lowest degree in the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = poly::degree::<F>(e) {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != k {
                m.swap(pi, k);
                sign_flip = !sign_flip;
            }
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(pj, k);
                }
                sign_flip = !sign_flip;
            }
            let pivot = m[k][k].clone();
            for i in k + 1..self.rows {
                for j in k + 1..self.cols {
                    let num = poly::sub(f, &poly::mul(f, &pivot, &m[i][j]), &poly::mul(f, &m[i][k], &m[k][j]));
                    m[i][j] = poly::exact_div(f, &num, &prev);
                }
                m[i][k] = Vec::new();
            }
            prev = pivot;
            rank += 1;
        }
        if sign_flip {
            prev = poly::neg(f, &prev);
        }
        (rank, prev)
    }

    /// Rank over the fraction field k(x).
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Poly<F> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return poly::constant(&self.field, self.field.one());
        }
        let (r, d) = self.bareiss();
        if r < self.rows {
            Vec::new()
        } else {
            d
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Monic gcd of all `size × size` minors (the Fitting-type invariant used by
    /// the support checks). Zero when every such minor vanishes.
    pub fn minors_gcd(&self, size: usize) -> Poly<F> {
        let f = &self.field;
        if size == 0 {
            return poly::constant(f, f.one());
        }
        let mut g: Poly<F> = Vec::new();
        for rs in combinations(self.rows, size) {
            for cs in combinations(self.cols, size) {
                let d = self.submatrix(&rs, &cs).determinant();
                g = poly::gcd(f, &g, &d);
                if poly::degree::<F>(&g) == Some(0) {
                    return g;
                }
            }
        }
        g
    }
}

/// Rank of a polynomial matrix over the fraction field, by Bareiss elimination.
pub fn poly_matrix_rank<F: Field>(m: &PolyMatrix<F>) -> usize {
    m.rank()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{ExtensionField, PrimeField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f5();
        let d = PolyMatrix::from_i64(&f, &[&[&[0, 1], &[]], &[&[], &[-1, 1]]]);
        assert_eq!(d.rank(), 2);
        let m = PolyMatrix::from_i64(&f, &[&[&[0, 1], &[0, 0, 1]], &[&[1], &[0, 1]]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(PolyMatrix::zeros(&f, 0, 3).rank(), 0);
    }

    #[test]
    fn determinant_of_companion() {
        let f = f5();
        // [[x, 1], [-2, x]] has determinant x^2 + 2
        let m = PolyMatrix::from_i64(&f, &[&[&[0, 1], &[1]], &[&[-2], &[0, 1]]]);
        assert_eq!(m.determinant(), poly::from_i64s(&f, &[2, 0, 1]));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn evaluation_never_exceeds_generic_rank() {
        let f = f5();
        let ext = ExtensionField::first_of_degree(f, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = PolyMatrix::random(&f, 2, 3, 2, &mut rng);
            let b = PolyMatrix::random(&f, 3, 3, 2, &mut rng);
            let m = a.mul(&b);
            let r = m.rank();
            let mut hit = false;
            for _ in 0..20 {
                let pt = ext.random_elem(&mut rng);
                let ev = m.eval_in(&ext, |c| ext.embed(*c), &pt).rank();
                assert!(ev <= r);
                hit |= ev == r;
            }
            assert!(hit);
        }
    }
}
