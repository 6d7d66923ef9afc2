//! Matrices in SL2(Z) and the real quadratic field data attached to a
//! hyperbolic one.

mod degree;
mod field;
mod matrix;

pub use degree::{discriminant_log_bound, euler_phi, kummer_degree_interval, may_ramify_in_kn, DegreeInterval};
pub use field::{classify_prime, field_data, PrimeSplitting, QuadFieldData, QuadUnit};
pub use matrix::{classify_matrix, MatrixClass, ModMatrix, Sl2Matrix};
