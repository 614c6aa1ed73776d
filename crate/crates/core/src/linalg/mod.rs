//! Small dense linear algebra.
//!
//! Nothing here aims at BLAS-level performance. The sizes involved are the
//! 2^L-dimensional lattice Hamiltonians (L ≤ 12), Hankel matrices of a few
//! thousand rows that are only ever touched through matrix-vector products,
//! and K×K problems with K ≤ 32.

mod eig;
mod jacobi;
mod lstsq;
mod matrix;
mod subspace;

pub use eig::small_complex_eig;
pub use jacobi::{sym_eig, SymEig};
pub use lstsq::lstsq_complex;
pub use matrix::{ComplexMatrix, Hankel, LinearOperator, SymMatrix};
pub use subspace::{top_singular_subspace, SubspaceOptions};

use num_complex::Complex64;

pub(crate) fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `Σ conj(a_i) b_i`
pub(crate) fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
