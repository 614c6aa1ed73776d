//! Multiple-eigenvalue estimation by Gaussian-filtered search.
//!
//! A dataset of Hadamard-test shots at random times is turned into the
//! filter `G(θ)` on a uniform grid, and the `K` largest blocked peaks are
//! returned.

mod filter;
mod params;
mod peaks;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::{generate_dataset, generate_integer_dataset, Dataset, TimeMode};
use crate::spectrum::SpectralModel;

pub use filter::{
    filter_eval, filter_grid, filter_oracle, filter_oracle_tail, grid_average, grid_last_index, grid_theta,
    periodic_gaussian, wrapped_distance, FilterGrid,
};
pub use params::{theorem_params, ParamConstants, Regime, TheoremParams};
pub use peaks::{peak_indices, peak_search};

/// Parameters of one search run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QmegsConfig {
    /// Number of shots.
    pub n: usize,
    /// Depth parameter `T`.
    pub depth: f64,
    pub sigma: f64,
    /// Block constant: picks are at least `α/T` apart.
    pub alpha: f64,
    /// Grid step constant: spacing is `q/T`.
    pub q: f64,
    /// Number of peaks.
    pub k: usize,
}

impl QmegsConfig {
    /// Settings used throughout the numerical experiments: `N = 500`,
    /// `K = 2`, `α = 5`, `σ = 1`, `q = 0.05`.
    pub fn standard(depth: f64) -> Self {
        Self { n: 500, depth, sigma: 1.0, alpha: 5.0, q: 0.05, k: 2 }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("T", self.depth)?;
        positive("sigma", self.sigma)?;
        positive("alpha", self.alpha)?;
        positive("q", self.q)?;
        if self.n == 0 || self.k == 0 {
            return Err(Error::invalid("N and K must be at least 1"));
        }
        if self.q >= self.alpha / 3.0 {
            return Err(Error::invalid(format!(
                "q = {} must be below alpha/3 = {}",
                self.q,
                self.alpha / 3.0
            )));
        }
        let ratio = self.alpha / self.q;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio {
            return Err(Error::invalid(format!("alpha/q = {ratio} is not an integer")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "qmegs")]
    Qmegs,
    #[serde(rename = "qmegs-int")]
    QmegsInt,
    #[serde(rename = "esprit")]
    Esprit,
    #[serde(rename = "qpe")]
    Qpe,
    #[serde(rename = "mmqcels")]
    MmQcels,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Qmegs,
        Algorithm::QmegsInt,
        Algorithm::Esprit,
        Algorithm::Qpe,
        Algorithm::MmQcels,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Qmegs => "qmegs",
            Algorithm::QmegsInt => "qmegs-int",
            Algorithm::Esprit => "esprit",
            Algorithm::Qpe => "qpe",
            Algorithm::MmQcels => "mmqcels",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown algorithm '{s}'")))
    }
}

/// Output of any estimator in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub algorithm: Algorithm,
    pub estimates: Vec<f64>,
    pub t_max: f64,
    pub t_total: f64,
    /// Set when an iterative solver stopped before meeting its tolerance.
    pub degraded: bool,
    /// The configuration that produced this result.
    pub config: serde_json::Value,
}

/// Filter grid and blocked peaks for an existing dataset.
pub fn qmegs_search(dataset: &Dataset, config: &QmegsConfig) -> Result<(Vec<f64>, FilterGrid)> {
    config.validate()?;
    let grid = filter_grid(dataset, config.depth, config.q)?;
    let wrap = dataset.mode == TimeMode::Integer;
    let estimates = peak_search(&grid, config.k, config.alpha, wrap)?;
    Ok((estimates, grid))
}

fn finish(algorithm: Algorithm, dataset: &Dataset, estimates: Vec<f64>, config: &QmegsConfig) -> EstimateResult {
    let (t_max, t_total) = dataset.cost();
    EstimateResult {
        algorithm,
        estimates,
        t_max,
        t_total,
        degraded: false,
        config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    }
}

/// Generates real-time data and runs the search.
pub fn qmegs_run<R: Rng + ?Sized>(model: &SpectralModel, config: &QmegsConfig, rng: &mut R) -> Result<EstimateResult> {
    config.validate()?;
    let dataset = generate_dataset(model, config.n, config.depth, config.sigma, rng)?;
    let (estimates, _) = qmegs_search(&dataset, config)?;
    Ok(finish(Algorithm::Qmegs, &dataset, estimates, config))
}

/// Integer-power variant: times from the periodic-Gaussian distribution and
/// blocking on the circle.
pub fn qmegs_int_run<R: Rng + ?Sized>(model: &SpectralModel, config: &QmegsConfig, rng: &mut R) -> Result<EstimateResult> {
    config.validate()?;
    if config.depth < 1.0 {
        return Err(Error::OutOfRegime(format!(
            "integer powers need T >= 1, got {}",
            config.depth
        )));
    }
    let dataset = generate_integer_dataset(model, config.n, config.depth, config.sigma, rng)?;
    let (estimates, _) = qmegs_search(&dataset, config)?;
    Ok(finish(Algorithm::QmegsInt, &dataset, estimates, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::stream_rng;

    #[test]
    fn config_validation() {
        assert!(QmegsConfig::standard(100.0).validate().is_ok());
        let mut c = QmegsConfig::standard(100.0);
        c.q = 2.0;
        assert!(c.validate().is_err());
        c.q = 0.03;
        assert!(c.validate().is_err());
        c = QmegsConfig::standard(-1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("music".parse::<Algorithm>().is_err());
    }

    #[test]
    fn single_mode_is_found() {
        let model = SpectralModel::new(vec![0.3], vec![1.0], vec![0]).unwrap();
        let mut c = QmegsConfig::standard(200.0);
        c.n = 2000;
        c.k = 1;
        let r = qmegs_run(&model, &c, &mut stream_rng(1, 0)).unwrap();
        assert!((r.estimates[0] - 0.3).abs() <= c.alpha / c.depth);
        assert!(r.t_max <= c.sigma * c.depth);
    }

    #[test]
    fn extra_peaks_are_harmless() {
        let model = SpectralModel::new(vec![-0.4, 0.2], vec![0.8, 0.2], vec![0]).unwrap();
        let mut c = QmegsConfig::standard(100.0);
        c.k = 4;
        let r = qmegs_run(&model, &c, &mut stream_rng(2, 0)).unwrap();
        assert_eq!(r.estimates.len(), 4);
        assert!(r.estimates.iter().any(|e| (e + 0.4).abs() <= c.alpha / c.depth));
    }

    #[test]
    fn integer_run_is_reproducible() {
        let model = SpectralModel::new(vec![-0.4, 0.2], vec![0.8, 0.2], vec![0]).unwrap();
        let mut c = QmegsConfig::standard(50.0);
        c.sigma = 3.0;
        let a = qmegs_int_run(&model, &c, &mut stream_rng(3, 0)).unwrap();
        let b = qmegs_int_run(&model, &c, &mut stream_rng(3, 0)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.algorithm, Algorithm::QmegsInt);
        assert!(a.t_max <= 150.0 && a.t_max.fract() == 0.0);
        c.depth = 0.5;
        assert!(qmegs_int_run(&model, &c, &mut stream_rng(3, 0)).is_err());
    }
}
