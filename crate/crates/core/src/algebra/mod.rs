//! Exact scalars, Laurent exponent vectors, sparse Laurent polynomials and
//! rational expressions in the time variable.

mod exponent;
mod poly;
mod rational;
mod time_expr;

pub use exponent::ExponentVector;
pub use poly::{Degree, LaurentPolynomial};
pub use rational::{format_rational, parse_rational, rational, Rational};
pub use time_expr::TimeExpression;
