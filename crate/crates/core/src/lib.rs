//! Exact-arithmetic toolkit for symmetric, G-invariant and antisymmetric
//! polynomials on `(ℝ^d)^n`.

pub mod error;
pub mod linalg;
pub mod numeric;
pub mod antisymmetric;
pub mod group;
pub mod poly;
pub mod symmetric;

pub use error::{Error, Result};
