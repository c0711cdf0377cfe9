//! Exact computations with representations of the generalized Kronecker quiver K_r.

pub mod analysis;
pub mod canonical;
pub mod constructions;
pub mod error;
pub mod functors;
pub mod homalg;
pub mod linalg;
pub mod rep;
pub mod test_reps;

pub use error::{Error, Result};
