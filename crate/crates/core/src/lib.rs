//! Classical simulation of Gaussian-filtered multiple eigenvalue phase
//! estimation.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: the small dense linear algebra the rest of the crate needs
//!   (Jacobi symmetric eigensolver, randomized top singular subspace, small
//!   complex eigenvalues, pivoted QR least squares).
//! - [`spectrum`]: spectral models `{(λ_m, p_m)}` built from a toy
//!   Hamiltonian, the transverse field Ising chain or the Fermi-Hubbard chain.
//! - [`sampler`]: Hadamard-test shot simulation with truncated Gaussian (or
//!   integer, periodic Gaussian) evolution times.
//! - [`estimator`]: the filtered spectral function, blocked peak search and
//!   the real-time and integer-power search pipelines.
//! - [`baselines`]: ESPRIT, textbook QPE and MM-QCELS for comparison.
//! - [`io`]: the model file and the columnar dataset file.
//!
//! Every estimator consumes only a [`spectrum::SpectralModel`] and a caller
//! supplied RNG, so runs are reproducible from a seed.

pub mod baselines;
pub mod error;
pub mod estimator;
pub mod io;
pub mod linalg;
pub mod sampler;
pub mod spectrum;

pub use error::{Error, Result};
pub use estimator::{qmegs_int_run, qmegs_run, Algorithm, EstimateResult, QmegsConfig};
pub use num_complex::Complex64;
pub use sampler::{stream_rng, Dataset, Shot, TimeMode};
pub use spectrum::SpectralModel;
