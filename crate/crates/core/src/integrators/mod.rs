//! Superposition-preserving difference schemes for scalar and matrix
//! Riccati equations, plus a linearization oracle for the matrix case.

mod matrix;
mod matrix_riccati;
mod scalar;
mod trajectory;

pub use matrix::Matrix;
pub use matrix_riccati::{
    matrix_riccati_integrate, matrix_riccati_oracle, matrix_riccati_step, uqh_integrate, uqh_step,
    Coefficients, MatrixRiccatiSystem,
};
pub use scalar::{
    riccati_integrate, riccati_integrate_batch, riccati_step, riccati_step_explicit,
    riccati_step_semi_implicit, RiccatiCoefficients, ScalarScheme,
};
pub use trajectory::{CsvState, Mode, Trajectory};
