//! Exact dense linear algebra over prime fields, their finite extensions and Q,
//! plus polynomial matrices over k[x].

pub mod field;
pub mod matrix;
pub mod poly;
pub mod polymatrix;

pub use field::{ExtensionField, Field, PrimeField, Rationals};
pub use matrix::{kernel_basis, rank, solve_linear, Matrix, Subquotient};
pub use poly::Poly;
pub use polymatrix::{poly_matrix_rank, PolyMatrix};

/// Errors raised while constructing fields or parsing scalars.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("extension modulus must be monic of degree at least 1")]
    NotMonic,
    #[error("extension modulus is reducible, divisible by {witness:?}")]
    Reducible { witness: Vec<u64> },
    #[error("parse error: {0}")]
    Parse(String),
}
