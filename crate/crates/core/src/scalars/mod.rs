//! Exact scalar arithmetic: rationals, polynomials in `q`, and the
//! rational-function field that every structure constant lives in.

mod poly;
mod ratfunc;

pub use poly::{Poly, Rational};
pub use ratfunc::RatFunc;
