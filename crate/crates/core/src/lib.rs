//! Generalized complex, Riemannian and Kähler geometry on invariant frames.
//!
//! A frame is a real Lie algebra of even dimension `m = 2n` with rational
//! structure constants. Invariant differential forms are elements of the
//! exterior algebra of its dual and the exterior derivative is the
//! Chevalley–Eilenberg differential, so every operator in this crate is a
//! finite matrix on the `2^m`-dimensional form space.
//!
//! Differentials, brackets, ranks and cohomology are computed exactly over
//! Gaussian rationals. Anything needing square roots (orthonormal frames,
//! the Born–Infeld inner product, Laplacian kernels) runs in `f64`.

pub mod cli;
pub mod deformation;
pub mod error;
pub mod float;
pub mod frame;
pub mod gc;
pub mod hodge;
pub mod matrix;
pub mod multilinear;
pub mod scalar;

pub use error::{GeometryError, Result};
pub use matrix::{Matrix, OperatorMatrix};
pub use scalar::{Cq, C64, Q};
