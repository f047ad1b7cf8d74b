//! Exact computation of Orlik–Solomon dimensions of hyperplane arrangements
//! and of the group-theoretic data (symplectic reflections, minimal
//! parabolics, Namikawa Weyl group orders) needed to count symplectic
//! resolutions of quotient singularities V/Γ as dim H*(𝔠 ∖ 𝒟) / |W|.

pub mod arith;
pub mod arrangement;
pub mod catalog;
pub mod counting;
pub mod error;
pub mod group;
pub mod matroid;
pub mod oracle;
pub mod report;
pub mod roots;
pub mod selftest;

pub use arith::{ExactMatrix, FieldDescriptor, Scalar};
pub use arrangement::{Arrangement, Hyperplane, IntegerPolynomial, IntersectionLattice};
pub use error::{Error, Result};
