//! Exact-arithmetic engines for weight and perverse Leray filtrations.
//!
//! Everything downstream of the scenario loader is pure: spectral-sequence
//! pages are assembled from user-supplied matrices, reduced by exact linear
//! algebra over the rationals, and compared against the combinatorial
//! predictions (flag kernels, Künneth powers, mirror substitution). No
//! floating point is used anywhere.
//!
//! The numeric core is generic over the scalar type (see [`num`]); the
//! aliases below fix the concrete scalars used by the whole artifact:
//! arbitrary-precision integers for Laurent coefficients and reduced
//! rationals for matrix entries.

pub mod error;
pub mod hodge;
pub mod lg;
pub mod linalg;
pub mod mirror;
pub mod num;
pub mod perverse;
pub mod polyalg;
pub mod report;
pub mod scenario;
pub mod specseq;
pub mod weight;

/// Arbitrary-precision integer, the coefficient ring of [`LaurentPoly`].
pub type Int = num_bigint::BigInt;

/// Reduced rational number, the field of coefficients of every complex.
pub type Rational = num_rational::BigRational;

/// Sparse matrix over the rationals.
pub type QMatrix = linalg::Matrix<Rational>;

/// Integer-coefficient Laurent polynomial in the four variables (u, t, w, p).
pub type LaurentPoly = polyalg::Laurent<Int>;

pub use error::Error;
