//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every verdict-bearing computation in the crate goes through these types;
//! the only floating point lives in [`spectrum`] for irrational eigenvalue
//! magnitudes, and there only the sign pattern is ever consumed.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectrum;

pub use matrix::{symmetry_decompose, ExactMatrix, Rref, SymmetryClass, SymmetryDecomposition, Vector};
pub use poly::RationalPoly;
pub use scalar::{int, ratio, rational_sqrt, rational_to_f64, Rational, Scalar};
pub use spectrum::{antisym_eigensplit, EigenPair, EigenSplit, Magnitude};

/// Basis of the null space of `m`; see [`ExactMatrix::kernel`].
pub fn kernel(m: &ExactMatrix) -> Vec<Vector> {
    m.kernel()
}
