//! Exact linear algebra over ℚ and GF(p).

mod field;
mod matrix;
mod poly;
mod rational;
mod sparse;
mod subspace;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::Rational;
pub use sparse::{normalize, to_dense, to_sparse, SparseEchelon, SparseVec};
pub use subspace::Subspace;
