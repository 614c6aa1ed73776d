use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{Algorithm, EstimateResult};
use crate::linalg::{lstsq_complex, small_complex_eig, top_singular_subspace, ComplexMatrix, Hankel, SubspaceOptions};
use crate::sampler::hadamard_shot;
use crate::spectrum::SpectralModel;

/// Unit-spaced ESPRIT. Samples are taken at `t = 0, 1, …, N` with
/// `N = ⌊T⌋` made odd.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EspritConfig {
    pub depth: f64,
    pub k: usize,
    /// Shots averaged into each Hankel entry.
    pub shots_per_node: usize,
}

impl EspritConfig {
    pub fn new(depth: f64, k: usize) -> Self {
        Self { depth, k, shots_per_node: 1 }
    }

    /// Largest odd integer not above `T`.
    pub fn nodes(&self) -> usize {
        let n = self.depth.max(0.0).floor() as usize;
        if n.is_multiple_of(2) {
            n.saturating_sub(1)
        } else {
            n
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.depth.is_finite() && self.depth >= 1.0) {
            return Err(Error::invalid(format!("ESPRIT needs T >= 1, got {}", self.depth)));
        }
        if self.shots_per_node == 0 {
            return Err(Error::invalid("shots_per_node must be at least 1"));
        }
        let n = self.nodes();
        if self.k == 0 || self.k > (n.saturating_sub(1)) / 2 {
            return Err(Error::invalid(format!(
                "model order K = {} needs 1 <= K <= (N-1)/2 with N = {n}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Frequencies from samples `Z_0, …, Z_N` (`N` odd) of `Σ_m c_m e^{−iλ_m n}`.
///
/// The square Hankel matrix `H_{ij} = Z_{i+j}` has column space spanned by
/// `(e^{−iλ_m i})_i`, so with `U₀`/`U₁` the top and bottom row blocks of its
/// leading left singular vectors, `U₁⁺U₀` has eigenvalues `e^{+iλ_m}` and the
/// returned angles are the `λ_m` themselves.
pub fn esprit_from_signal(samples: &[Complex64], k: usize) -> Result<Vec<f64>> {
    if samples.len() < 2 || !samples.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "ESPRIT needs an odd N, i.e. an even number N+1 of samples, got {}",
            samples.len()
        )));
    }
    let size = samples.len() / 2;
    if k == 0 || k >= size {
        return Err(Error::invalid(format!(
            "model order {k} must satisfy 1 <= K <= {}",
            size - 1
        )));
    }
    let hankel = Hankel::new(size, size, samples.to_vec())?;
    let u = top_singular_subspace(&hankel, k, SubspaceOptions::default())?;
    let u0 = u.block(0, size - 1, 0, k);
    let u1 = u.block(1, size, 0, k);

    let columns = (0..k)
        .map(|c| lstsq_complex(&u1, &u0.column(c)))
        .collect::<Result<Vec<_>>>()?;
    let rotation = ComplexMatrix::from_columns(&columns)?;
    let mut angles: Vec<f64> = small_complex_eig(&rotation)?.iter().map(|mu| mu.arg()).collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

pub fn esprit_run<R: Rng + ?Sized>(model: &SpectralModel, config: &EspritConfig, rng: &mut R) -> Result<EstimateResult> {
    config.validate()?;
    let n = config.nodes();
    let samples: Vec<Complex64> = (0..=n)
        .map(|node| {
            let t = node as f64;
            let sum: Complex64 = (0..config.shots_per_node)
                .map(|_| hadamard_shot(model, t, rng).z)
                .sum();
            sum / config.shots_per_node as f64
        })
        .collect();
    let estimates = esprit_from_signal(&samples, config.k)?;
    let n_f = n as f64;
    Ok(EstimateResult {
        algorithm: Algorithm::Esprit,
        estimates,
        t_max: n_f,
        t_total: config.shots_per_node as f64 * n_f * (n_f + 1.0) / 2.0,
        degraded: false,
        config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    })
}
