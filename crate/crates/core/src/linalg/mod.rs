//! Exact linear algebra over ℚ, with modular helpers.

mod matrix;
pub mod modular;

pub use matrix::{format_scalar, frac, int, parse_scalar, Matrix, Rref, Scalar};
