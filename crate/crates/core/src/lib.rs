//! Exact computation of cohomological length functions on perfect complexes.

pub mod exactlin;
pub mod coeffalg;
pub mod perfcx;
pub mod cohfun;
pub mod spectrum;
pub mod random;
pub mod suites;

pub use cohfun::{CohFunction, Label};
pub use exactlin::{Field, PrimeField, Rationals};
pub use perfcx::{Barcode, PerfectComplex, Triangle};
pub use suites::{RunConfig, SuiteReport};
