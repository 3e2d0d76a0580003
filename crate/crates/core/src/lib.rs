//! Exact-arithmetic machinery for antipodal spherical point configurations.
//!
//! The crate constructs the simply-laced root systems (A, D, E), the extended
//! binary Golay code, the 196560 minimal vectors of the Leech lattice and the
//! 4600-point tight 7-design on S^22, then answers, with exact rational
//! arithmetic throughout, whether a *half* of such a set (one point from each
//! antipodal pair) can sum to the zero vector, and more generally whether a
//! half can be a spherical design of harmonic index `i`.
//!
//! No floating point is used anywhere: scalars are arbitrary-precision
//! rationals (optionally extended by √3 for the E₆ coordinate model), point
//! coordinates are stored as integers over a small common denominator, and
//! every verdict the crate emits is backed by an exact computation or an
//! exactly checkable certificate.
//!
//! Module map:
//! - [`exact`]: rational / √3-quadratic scalars, exact vectors and matrices,
//!   reduced row echelon form, kernel bases, and a Mersenne-prime modular
//!   fast path used only to *certify* ranks (never to assert equalities).
//! - [`points`]: compact exact point sets with antipodal pairing, half
//!   selections, and obstruction certificates.
//! - [`roots`]: A_l, D_n, E_6, E_7, E_8 generation, closed-form halves and
//!   parity obstructions, plus an exhaustive brute-force search oracle.
//! - [`golay`]: the extended binary Golay code and its complementary-pair
//!   halving.
//! - [`leech`]: the three-type decomposition of the Leech minimal vectors,
//!   the zero-sum half, and the tight 7-design construction.
//! - [`harmonic`]: homogeneous harmonic polynomials, Gegenbauer evaluation,
//!   and characteristic matrices of point selections.
//! - [`verify`]: Gegenbauer moment tests, ±1 left-null-vector searches, Gram
//!   orthogonality checks, and the seeded greedy half search.
//! - [`scheme`]: inner-product distributions, intersection numbers, and the
//!   parity obstructions ruling out association-scheme structure on halves.

pub mod error;
pub mod exact;
pub mod golay;
pub mod harmonic;
pub mod leech;
pub mod points;
pub mod roots;
pub mod scheme;
pub mod verify;

pub use error::CoreError;
pub use exact::{ExactMatrix, ExactVector, QuadraticScalar, Rational};
pub use points::{HalfSelection, ObstructionCertificate, PointSet};
pub use roots::RootFamily;
