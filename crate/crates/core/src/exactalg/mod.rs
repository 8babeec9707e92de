//! Exact arithmetic kernel: rationals, dense polynomials over Q and
//! truncated Laurent series in 1/T.

mod poly;
mod rational;
mod series;

pub use poly::{Degree, Polynomial};
pub use rational::Rational;
pub use series::LaurentSeries;
