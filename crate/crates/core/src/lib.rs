//! Symbolic-numeric tools for nonlinear superposition.
//!
//! * [`closure`] decides whether a finite set of polynomial vector fields
//!   generates a finite-dimensional Lie algebra, either by the degree
//!   criterion for fields on the line or by Newton polytope witnesses in any
//!   dimension.
//! * [`superposition`] holds the scalar Riccati superposition formula, the
//!   cross-ratio, and a checker for candidate superposition rules.
//! * [`integrators`] provides superposition-preserving difference schemes
//!   for scalar and matrix Riccati equations.

pub mod algebra;
pub mod closure;
pub mod error;
pub mod expr;
pub mod fields;
pub mod integrators;
pub mod io;
pub mod polytope;
pub mod scalar;
pub mod superposition;

pub use error::{Error, Result};
