use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{Algorithm, EstimateResult};
use crate::spectrum::SpectralModel;

const MAX_ANCILLAS: u32 = 24;

/// Textbook phase estimation with `d` ancillas (`N_t = 2^d`), used for the
/// lowest eigenvalue only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QpeConfig {
    pub d: u32,
    pub n_samples: usize,
}

impl QpeConfig {
    /// `⌈6/p⌉` repetitions for ground-state overlap `p`.
    pub fn for_overlap(d: u32, p: f64) -> Self {
        let n = (6.0 / p - 1e-9).ceil().max(1.0) as usize;
        Self { d, n_samples: n }
    }

    /// Ancilla count whose register size `2^d` is closest to `T` on a log scale.
    pub fn depth_for(t: f64) -> u32 {
        t.max(2.0).log2().round().clamp(1.0, MAX_ANCILLAS as f64) as u32
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.d > MAX_ANCILLAS {
            return Err(Error::invalid(format!("d must lie in 1..={MAX_ANCILLAS}, got {}", self.d)));
        }
        if self.n_samples == 0 {
            return Err(Error::invalid("n_samples must be at least 1"));
        }
        Ok(())
    }
}

/// Squared, normalized Dirichlet kernel `sin²(θN/2) / (N² sin²(θ/2))`.
pub fn dirichlet_kernel(theta: f64, n: usize) -> f64 {
    let wrapped = theta - 2.0 * PI * (theta / (2.0 * PI)).round();
    let den = (wrapped / 2.0).sin();
    if den == 0.0 {
        return 1.0;
    }
    let n_f = n as f64;
    let num = (wrapped * n_f / 2.0).sin();
    (num * num) / (n_f * n_f * den * den)
}

/// Outcome probabilities for `k = −N_t/2, …, N_t/2 − 1`, stored at index
/// `k + N_t/2`.
pub fn qpe_distribution(model: &SpectralModel, d: u32) -> Result<Vec<f64>> {
    if d == 0 || d > MAX_ANCILLAS {
        return Err(Error::invalid(format!("d must lie in 1..={MAX_ANCILLAS}, got {d}")));
    }
    let nt = 1usize << d;
    let half = (nt / 2) as i64;
    Ok((0..nt as i64)
        .map(|i| {
            let phase = 2.0 * PI * (i - half) as f64 / nt as f64;
            model
                .eigenvalues()
                .iter()
                .zip(model.overlaps())
                .map(|(&l, &p)| p * dirichlet_kernel(phase - l, nt))
                .sum()
        })
        .collect())
}

/// Samples the outcome distribution and returns `2π min k / N_t`.
pub fn qpe_run<R: Rng + ?Sized>(model: &SpectralModel, config: &QpeConfig, rng: &mut R) -> Result<EstimateResult> {
    config.validate()?;
    let probs = qpe_distribution(model, config.d)?;
    let nt = probs.len();
    let mut acc = 0.0;
    let cdf: Vec<f64> = probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    let total = acc;
    let lowest = (0..config.n_samples)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            cdf.partition_point(|&c| c <= u).min(nt - 1)
        })
        .min()
        .unwrap_or(0);
    let k = lowest as i64 - (nt / 2) as i64;
    let nt_f = nt as f64;
    Ok(EstimateResult {
        algorithm: Algorithm::Qpe,
        estimates: vec![2.0 * PI * k as f64 / nt_f],
        t_max: nt_f,
        t_total: config.n_samples as f64 * nt_f,
        degraded: false,
        config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::stream_rng;

    #[test]
    fn repetitions_for_overlap() {
        assert_eq!(QpeConfig::for_overlap(8, 0.4).n_samples, 15);
        assert_eq!(QpeConfig::for_overlap(8, 1.0).n_samples, 6);
        assert_eq!(QpeConfig::depth_for(3200.0), 12);
        assert_eq!(QpeConfig::depth_for(200.0), 8);
    }

    #[test]
    fn aligned_mode_is_deterministic() {
        let nt = 64;
        let lambda = 2.0 * PI * 5.0 / nt as f64;
        let model = SpectralModel::new(vec![lambda], vec![1.0], vec![0]).unwrap();
        let p = qpe_distribution(&model, 6).unwrap();
        for (i, &v) in p.iter().enumerate() {
            if i == 32 + 5 {
                assert!((v - 1.0).abs() < 1e-12);
            } else {
                assert!(v < 1e-25);
            }
        }
        let r = qpe_run(&model, &QpeConfig { d: 6, n_samples: 15 }, &mut stream_rng(1, 0)).unwrap();
        assert!((r.estimates[0] - lambda).abs() < 1e-15);
    }

    #[test]
    fn midpoint_mode_splits_between_neighbours() {
        let nt = 8;
        let lambda = 2.0 * PI * 1.5 / nt as f64;
        let model = SpectralModel::new(vec![lambda], vec![1.0], vec![0]).unwrap();
        let p = qpe_distribution(&model, 3).unwrap();
        // Oracle: K(π/8) = sin²(π/2) / (64 sin²(π/16)).
        let oracle = 1.0 / (64.0 * (PI / 16.0).sin().powi(2));
        assert!((p[4 + 1] - oracle).abs() < 1e-12 && (p[4 + 2] - oracle).abs() < 1e-12);
        assert!((oracle - 0.405).abs() < 0.01);
    }

    #[test]
    fn partition_of_unity() {
        let model = SpectralModel::new(vec![-3.0, -0.123, 0.77, 3.1], vec![0.55, 0.2, 0.15, 0.1], vec![0]).unwrap();
        for d in 1..=12 {
            let s: f64 = qpe_distribution(&model, d).unwrap().iter().sum();
            assert!((s - 1.0).abs() < 1e-10, "d={d}: {s}");
        }
        assert!(qpe_distribution(&model, 25).is_err());
    }
}
