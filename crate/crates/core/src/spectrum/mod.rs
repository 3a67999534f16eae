//! Finite windows of the space of irreducible cohomological functions:
//! the enumerated spectrum over k[ε], basic opens, isolated points found by
//! functor witnesses, the closure point, closed length sets, and the map
//! from primes of k[x] to residue-field functions.

mod embed;
mod report;
mod window;

pub use embed::{cone_of_scalar, rho, rho_injectivity_check, separating_probe, supp_dichotomy_check, Separation, SuppReport};
pub use report::{label_table, open_set, spectrum_csv, spectrum_rows, spectrum_summary, Checks, SpectrumRow, SpectrumSummary};
pub use window::{
    basic_open_membership, candidate_functors, closed_length_set_check, closure_extra_point_check, enumerate_sp_dual_numbers,
    isolated_points, isolation_witnesses, ClosedSetReport, ClosureReport, FunctorProbe, Isolation, SpectrumWindow,
};

use crate::coeffalg::AlgebraError;
use crate::cohfun::CohfunError;
use crate::perfcx::PerfcxError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("labels {0} and {1} have the same tables up to shift")]
    Collision(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Cohfun(#[from] CohfunError),
    #[error(transparent)]
    Perfcx(#[from] PerfcxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
