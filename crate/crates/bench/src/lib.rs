//! Shared fixtures for the criterion benches.

use cohlen_core::coeffalg::CoeffAlgebra;
use cohlen_core::exactlin::{Matrix, PrimeField};
use cohlen_core::perfcx::PerfectComplex;
use cohlen_core::random::{case_rng, random_dual_complex, DualShape};

pub fn f5() -> PrimeField {
    PrimeField::new(5).expect("prime")
}

pub fn dual() -> CoeffAlgebra<PrimeField> {
    CoeffAlgebra::dual_numbers(&f5())
}

pub fn square(n: usize, seed: u64) -> Matrix<PrimeField> {
    Matrix::random(&f5(), n, n, &mut case_rng(seed, 0))
}

/// Random complexes over F_5[e] with the default shape.
pub fn complexes(count: usize, seed: u64) -> Vec<PerfectComplex<PrimeField>> {
    let alg = dual();
    (0..count).map(|i| random_dual_complex(&alg, DualShape::default(), &mut case_rng(seed, i as u64))).collect()
}
