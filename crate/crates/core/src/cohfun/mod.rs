//! Cohomological functions on perfect complexes: endolength functions of
//! objects and modules, residue-field functions, finite combinations of
//! irreducibles, the alternating-sum axiom checker, the extension to
//! finitely presented functors and decomposition into irreducibles.
//!
//! A function is evaluated through its *profile* on a complex C: the map
//! k ↦ χ(Σ^k C), stored without zero entries.

mod axioms;
mod function;
mod module;
mod simple;
mod table;

pub use axioms::{check_cohomological, check_strip, extend_chi, extend_chi_all, extend_chi_by_rank, extend_chi_shifts, strip_table, StripTable, Violation};
pub use function::{chi_of_complex, chi_of_module, eval, CohFunction, Label, Profile};
pub use module::FinModule;
pub use simple::{decompose_chi, five_term_sum, functor_kernel_dim, simple_functor_eval};
pub use table::{chi_table, chi_table_csv, hom_length_profile, lengths_determine_iso, string_probes, IsoVerdict, Probe, TableRow};

use crate::coeffalg::AlgebraError;
use crate::perfcx::PerfcxError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohfunError {
    #[error("complex lives over a different algebra")]
    AlgebraMismatch,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("no vanishing shift within ±{window}")]
    NoAnchor { window: i32 },
    #[error("extension depends on the anchor: {0:?}")]
    AnchorDependence(Vec<(i32, i64)>),
    #[error("negative extension value {0}: the function is not cohomological")]
    NotCohomological(i64),
    #[error("basis insufficient, residual {residual}")]
    BasisInsufficient { residual: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Perfcx(#[from] PerfcxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
