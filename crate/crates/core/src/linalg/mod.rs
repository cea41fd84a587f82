//! Dense complex linear algebra for dimensions up to a few hundred.
//!
//! Everything here is a pure function over immutable values. One index
//! convention is used throughout the crate: tensor factors are ordered left
//! to right as in [`ComplexMatrix::kron`], and composite indices are
//! big-endian, `i = i1*d2*...*dk + ... + ik`.

mod eig;
mod matrix;
mod vector;

pub use eig::HermitianEig;
pub use matrix::{hermiticity_tolerance, ComplexMatrix, EIG_TOL, PSD_TOL};
pub use vector::ComplexVector;
