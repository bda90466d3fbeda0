//! Exact computer algebra for integration on finite-dimensional Hopf
//! algebras and braided Hopf algebras represented by structure-constant
//! tensors over the field of rational functions in `q`.

pub mod braided;
pub mod duality;
pub mod error;
pub mod hopf;
pub mod integrals;
pub mod linalg;
pub mod presentation;
pub mod scalars;
pub mod smash;

#[cfg(test)]
pub(crate) mod testdata;

pub use error::{Error, Result};
pub use scalars::{Poly, RatFunc, Rational};
