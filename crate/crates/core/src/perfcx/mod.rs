//! Perfect complexes over a coefficient algebra: shifts, cones, Hom complexes,
//! minimal models, barcodes over k[ε] and Auslander–Reiten triangles.
//!
//! Conventions: differentials raise degree, (ΣX)^i = X^{i+1} with the
//! differential negated, so Σ^m X_{n,r} ≅ X_{n−m,r}. The cone of f: A → B has
//! terms B^i ⊕ A^{i+1} and differential [[d_B, f], [0, −d_A]].
//!
//! Why barcodes classify complexes over k[ε]: a minimal complex has d = ε·M
//! with M a base-field matrix, and ε² = 0 makes M_{i+1}M_i arbitrary, so the
//! mod-ε reductions form a representation of a linear quiver. A chain map
//! between minimal complexes is g = g_0 + ε·g_1 with g_0 a morphism of these
//! representations, and g is invertible exactly when g_0 is. Conversely any
//! isomorphism g_0 of representations is itself a chain isomorphism (take
//! g_1 = 0). So two minimal complexes are isomorphic iff their reductions
//! are, which interval decomposition decides.

mod barcode;
mod complex;
mod hom;
mod io;
mod minimal;
mod triangle;

pub use barcode::{barcode, barcode_by_ranks, homotopy_equivalent, Bar, Barcode, Decomposition};
pub use complex::{ChainMap, GradedMap, PerfectComplex, RegularRep};
pub use hom::{compose_graded, derived_hom_dim, graded_map, induced_post, EndAlgebra, HomComplex};
pub use io::{complex_from_json, complex_to_json, FieldSpec};
pub use minimal::{minimal_model, MinimalModel};
pub use triangle::{
    ar_triangle, cone, mutate_add_contractible, mutate_scramble, mutate_sum_with_identity, schanuel_free_parity_check,
    schanuel_triangle_check, Triangle,
};

use crate::coeffalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerfcxError {
    #[error("shape mismatch in degree {degree}: expected {expected:?}, got {got:?}")]
    Shape { degree: i32, expected: (usize, usize), got: (usize, usize) },
    #[error("d∘d ≠ 0 starting in degree {degree} at entry ({row}, {col})")]
    NotAComplex { degree: i32, row: usize, col: usize },
    #[error("square does not commute in degree {degree} at entry ({row}, {col})")]
    NotAChainMap { degree: i32, row: usize, col: usize },
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error("coefficient algebra is not local")]
    NotLocal,
    #[error("composite g∘f is not null-homotopic")]
    NotNullHomotopic,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot decide here: {0}")]
    Undecidable(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
