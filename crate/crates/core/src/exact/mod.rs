//! Exact scalar, vector, and matrix arithmetic over ℚ and ℚ(√3).
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share read-only across worker threads.

mod intmat;
mod matrix;
mod modp;
mod scalar;
mod vector;

pub use intmat::IntMatrix;
pub use matrix::{ExactMatrix, FieldScalar, KernelSide, Mat, RrefResult};
pub use modp::{mersenne31_rank, M31, MODULUS};
pub use scalar::{parse_rational, ratio, rational_token, QuadraticScalar, Rational};
pub use vector::ExactVector;
