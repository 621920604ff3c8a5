//! Exact basic Betti numbers, basic Hodge numbers and construction data for
//! the symplectic toric quasifold of a simple convex polytope.
//!
//! Polytopes may have coordinates in `Q` or in a real quadratic field
//! `Q(√k)`; every computation is exact. The pipeline is
//! vertices → face lattice → Morse data of a generic direction → invariants,
//! with the construction data of the foliation computed alongside.

pub mod cli;
pub mod delzant;
pub mod error;
pub mod generate;
pub mod invariants;
pub mod linalg;
pub mod morse;
pub mod polytope;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use polytope::HRep;
pub use report::{analyze, Analysis, DirectionChoice, Mode, Report};
pub use scalar::{FieldSpec, Scalar};
