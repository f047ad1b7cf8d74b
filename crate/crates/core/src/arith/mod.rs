//! Exact arithmetic over ℚ and cyclotomic fields, plus the row reduction
//! everything else is built on.

pub mod field;
pub mod matrix;
mod poly;
pub mod scalar;

pub use field::FieldDescriptor;
pub use matrix::{ExactMatrix, Rref};
pub use scalar::Scalar;
