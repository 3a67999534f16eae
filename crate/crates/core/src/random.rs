//! Seeded generators for the property suites. Every generator draws from the
//! caller's RNG only, so a fixed ChaCha8 seed gives a fixed stream of cases.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffalg::findim::{matrix_algebra, product, truncated_poly_algebra, upper_triangular};
use crate::coeffalg::{AlgMatrix, AlgebraModule, CoeffAlgebra, FinDimAlgebra};
use crate::exactlin::{Field, Matrix};
use crate::perfcx::{cone, ChainMap, EndAlgebra, HomComplex, PerfectComplex, Triangle};

/// Independent stream `case` of run `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_invertible<F: Field>(field: &F, n: usize, rng: &mut dyn RngCore) -> Matrix<F> {
    loop {
        let m = Matrix::random(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Shape of a random complex over k[ε].
#[derive(Clone, Copy, Debug)]
pub struct DualShape {
    pub lo: i32,
    pub hi: i32,
    pub max_rank: usize,
}

impl Default for DualShape {
    fn default() -> Self {
        DualShape { lo: -4, hi: 4, max_rank: 4 }
    }
}

/// εM_i differentials in a random normal form conjugated by random
/// invertible scalar matrices, padded with contractible pieces A → A, then
/// conjugated by random units P + εQ of k[ε]^{n×n}.
pub fn random_dual_complex<F: Field>(alg: &CoeffAlgebra<F>, shape: DualShape, rng: &mut dyn RngCore) -> PerfectComplex<F> {
    assert!(alg.is_dual_numbers(), "random_dual_complex is over k[e]");
    let field = alg.field();
    let degs: Vec<i32> = (shape.lo..=shape.hi).collect();
    let ranks: Vec<usize> = degs.iter().map(|_| rng.gen_range(0..=shape.max_rank)).collect();
    let mut total = ranks.clone();
    let mut pads = vec![0usize; degs.len()];
    for i in 0..degs.len().saturating_sub(1) {
        while total[i] < shape.max_rank && total[i + 1] < shape.max_rank && rng.gen_bool(0.3) {
            pads[i] += 1;
            total[i] += 1;
            total[i + 1] += 1;
        }
    }
    // normal form: in degree i the first c_{i−1} coordinates are boundaries,
    // the last c_i map onto the first c_i coordinates of degree i+1
    let mut c = vec![0usize; degs.len()];
    for i in 0..degs.len().saturating_sub(1) {
        let b = if i == 0 { 0 } else { c[i - 1] };
        let room = ranks[i].saturating_sub(b).min(ranks[i + 1]);
        c[i] = rng.gen_range(0..=room);
    }
    let p: Vec<Matrix<F>> = ranks.iter().map(|&n| random_invertible(field, n, rng)).collect();
    let mut diffs = BTreeMap::new();
    for i in 0..degs.len().saturating_sub(1) {
        let (m, n) = (ranks[i + 1], ranks[i]);
        if m == 0 || n == 0 {
            continue;
        }
        let j = Matrix::from_fn(field, m, n, |r, s| if r < c[i] && s == n - c[i] + r { field.one() } else { field.zero() });
        let mi = p[i + 1].mul(&j).mul(&p[i].inverse().expect("invertible"));
        diffs.insert(degs[i], AlgMatrix::from_coefficients(alg, m, n, &[Matrix::zeros(field, m, n), mi]));
    }
    let rank_map = degs.iter().zip(&ranks).filter(|(_, &r)| r > 0).map(|(&d, &r)| (d, r)).collect();
    let mut x = PerfectComplex::new(alg, rank_map, diffs).expect("normal form squares to zero");
    for (i, &k) in pads.iter().enumerate() {
        for _ in 0..k {
            let s = PerfectComplex::stalk(alg, degs[i] + 1, 1);
            x = x.direct_sum(&cone(&ChainMap::identity(&s)).expect("identity is a chain map").c);
        }
    }
    scramble(&x, rng)
}

/// Conjugates every term by a random unit P + εQ (or a random invertible
/// polynomial-free scalar matrix over other algebras).
pub fn scramble<F: Field>(x: &PerfectComplex<F>, rng: &mut dyn RngCore) -> PerfectComplex<F> {
    let alg = x.algebra();
    let field = alg.field();
    let mut basis = BTreeMap::new();
    let mut inv = BTreeMap::new();
    for (&i, &n) in x.ranks() {
        let p = random_invertible(field, n, rng);
        let u = if alg.is_dual_numbers() {
            AlgMatrix::from_coefficients(alg, n, n, &[p, Matrix::random(field, n, n, rng)])
        } else {
            AlgMatrix::from_field_matrix(alg, &p)
        };
        inv.insert(i, u.inverse(alg).expect("units are invertible"));
        basis.insert(i, u);
    }
    x.change_basis(&basis, &inv)
}

/// A random chain map X → Y between two random complexes, and its cone.
pub fn random_cone_triangle<F: Field>(alg: &CoeffAlgebra<F>, shape: DualShape, rng: &mut dyn RngCore) -> Triangle<F> {
    let x = random_dual_complex(alg, shape, rng);
    let y = random_dual_complex(alg, shape, rng);
    let f = HomComplex::new(&x, &y).expect("same algebra").random_chain_map(rng);
    cone(&f).expect("a chain map has a cone")
}

/// A complex over k[x] with entries of degree ≤ `max_deg`: either a single
/// random matrix A^a → A^b, or A^a → A^{b1+b2} → A^c of block form
/// [[U], [0]] and [0 | V] conjugated in the middle by a transvection.
pub fn random_poly_complex<F: Field>(alg: &CoeffAlgebra<F>, max_deg: usize, rng: &mut dyn RngCore) -> PerfectComplex<F> {
    let deg0 = rng.gen_range(-1..=1);
    if rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = AlgMatrix::random(alg, b, a, max_deg, rng);
        return PerfectComplex::two_term(alg, deg0, m);
    }
    let (a, b1, b2, c) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
    let low = max_deg.saturating_sub(1);
    // the transvection below raises degrees by at most one
    let u = AlgMatrix::random(alg, b1, a, low, rng);
    let v = AlgMatrix::random(alg, c, b2, low, rng);
    let b = b1 + b2;
    let mut d0 = AlgMatrix::zeros(b, a);
    d0.set_block(0, 0, &u);
    let mut d1 = AlgMatrix::zeros(c, b);
    d1.set_block(0, b1, &v);
    // E = I + t e_{ij}, E^{-1} = I − t e_{ij}, t of degree ≤ 1
    let (i, j) = (rng.gen_range(0..b), rng.gen_range(0..b));
    if i != j && max_deg >= 1 {
        let t = alg.random_elem(1, rng);
        d0.add_row_multiple(alg, i, j, &t);
        d1.add_col_multiple(alg, j, i, &alg.neg(&t));
    }
    let ranks = BTreeMap::from([(deg0, a), (deg0 + 1, b), (deg0 + 2, c)]);
    let diffs = BTreeMap::from([(deg0, d0), (deg0 + 1, d1)]);
    PerfectComplex::new(alg, ranks, diffs).expect("block form squares to zero")
}

/// One of: a matrix algebra, upper-triangular matrices, k[x]/(f) for random
/// f, a product of two of these, or End of a random complex over k[ε].
pub fn random_end_algebra<F: Field>(field: &F, rng: &mut dyn RngCore) -> FinDimAlgebra<F> {
    let simple = |rng: &mut dyn RngCore| -> FinDimAlgebra<F> {
        match rng.gen_range(0..3) {
            0 => matrix_algebra(field, rng.gen_range(1..=2)),
            1 => upper_triangular(field, rng.gen_range(2..=3)),
            _ => {
                let d = rng.gen_range(1..=3);
                let f: Vec<F::Elem> = if field.order().is_some() {
                    let mut f: Vec<F::Elem> = (0..d).map(|_| field.random_elem(rng)).collect();
                    f.push(field.one());
                    f
                } else {
                    // the analysis over Q needs a split quotient: f = ∏ (x − a)
                    let mut f = vec![field.one()];
                    for _ in 0..d {
                        let a = field.from_i64(rng.gen_range(-2..=2));
                        let mut g = vec![field.zero(); f.len() + 1];
                        for (i, c) in f.iter().enumerate() {
                            g[i + 1] = field.add(&g[i + 1], c);
                            g[i] = field.sub(&g[i], &field.mul(&a, c));
                        }
                        f = g;
                    }
                    f
                };
                truncated_poly_algebra(field, &f)
            }
        }
    };
    match rng.gen_range(0..4) {
        0 | 1 => simple(rng),
        2 => {
            let (a, b) = (simple(rng), simple(rng));
            product(&[&a, &b])
        }
        _ => {
            let alg = CoeffAlgebra::dual_numbers(field);
            let x = random_dual_complex(&alg, DualShape { lo: 0, hi: 2, max_rank: 2 }, rng);
            EndAlgebra::new(&x).expect("End of a complex").algebra().clone()
        }
    }
}

/// The submodule of E^m generated by one or two random elements.
pub fn random_module<F: Field>(e: &FinDimAlgebra<F>, rng: &mut dyn RngCore) -> AlgebraModule<F> {
    let field = e.field();
    let n = e.dim();
    let m = rng.gen_range(1..=2);
    let gens: Vec<Vec<F::Elem>> = (0..rng.gen_range(1..=2)).map(|_| (0..n * m).map(|_| field.random_elem(rng)).collect()).collect();
    let act = |a: usize, v: &[F::Elem]| -> Vec<F::Elem> { v.chunks(n).flat_map(|c| e.mul(&e.basis(a), c)).collect() };
    let spanning: Vec<Vec<F::Elem>> = gens.iter().flat_map(|g| (0..n).map(move |a| act(a, g))).collect();
    let basis = Matrix::from_columns(field, n * m, &spanning).column_space_basis();
    let b = Matrix::from_columns(field, n * m, &basis);
    let action = (0..n)
        .map(|a| {
            let cols: Vec<Vec<F::Elem>> = basis.iter().map(|v| b.solve(&act(a, v)).expect("submodule is closed")).collect();
            Matrix::from_columns(field, basis.len(), &cols)
        })
        .collect();
    AlgebraModule::new(e, basis.len(), action).expect("restriction of a module action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::perfcx::barcode_by_ranks;

    #[test]
    fn dual_complexes_are_valid_and_bounded() {
        let a = CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap());
        let mut rng = case_rng(7, 0);
        for _ in 0..30 {
            let x = random_dual_complex(&a, DualShape::default(), &mut rng);
            x.validate().unwrap();
            assert!(x.ranks().iter().all(|(&d, &r)| (-4..=4).contains(&d) && r <= 4), "{:?}", x.ranks());
            barcode_by_ranks(&x).unwrap();
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = CoeffAlgebra::dual_numbers(&PrimeField::new(5).unwrap());
        let x = random_dual_complex(&a, DualShape::default(), &mut case_rng(3, 4));
        let y = random_dual_complex(&a, DualShape::default(), &mut case_rng(3, 4));
        assert_eq!(x, y);
    }

    #[test]
    fn poly_complexes_and_modules() {
        let f = PrimeField::new(5).unwrap();
        let a = CoeffAlgebra::poly_ring(&f);
        let mut rng = case_rng(1, 0);
        for _ in 0..30 {
            let x = random_poly_complex(&a, 3, &mut rng);
            x.validate().unwrap();
            assert!(x.diffs().values().all(|d| d.max_degree().unwrap_or(0) <= 3));
        }
        for _ in 0..10 {
            let e = random_end_algebra(&f, &mut rng);
            let m = random_module(&e, &mut rng);
            assert!(m.dim() > 0 || e.dim() == 0);
        }
    }
}
