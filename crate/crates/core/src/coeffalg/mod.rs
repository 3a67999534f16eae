//! Coefficient algebras (k[ε], k[x], k[x]/(f)) and finite-dimensional algebras.

pub mod algebra;
pub mod findim;
pub mod module;
pub mod radical;

pub use algebra::{residue_field, AlgMatrix, AlgebraKind, CoeffAlgebra, PrimeDatum, ResidueField};
pub use findim::{end_algebra_as_table, FinDimAlgebra};
pub use module::{analyze, module_length, AlgebraModule, SemisimpleData};
pub use radical::radical;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("modulus must be monic of positive degree")]
    BadModulus,
    #[error("the given unit is not a two-sided identity")]
    BadUnit,
    #[error("multiplication is not associative on basis elements ({a}, {b}, {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("polynomial is reducible, factor {witness}")]
    Reducible { witness: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("semisimple quotient does not split over the base field")]
    NonSplit,
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}
