//! Comparison estimators: ESPRIT on a unit-spaced Hankel matrix, textbook
//! QPE for the lowest eigenvalue, and multi-level QCELS.

mod esprit;
mod qcels;
mod qpe;

pub use esprit::{esprit_from_signal, esprit_run, EspritConfig};
pub use qcels::{mmqcels_run, qcels_loss, QcelsConfig};
pub use qpe::{dirichlet_kernel, qpe_distribution, qpe_run, QpeConfig};
