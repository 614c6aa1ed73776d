use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{filter_grid, peak_search, Algorithm, EstimateResult};
use crate::linalg::{lstsq_complex, ComplexMatrix};
use crate::sampler::{generate_dataset, Dataset};
use crate::spectrum::SpectralModel;

const SCAN_POINTS: usize = 32;
const PASSES: usize = 3;
const GOLDEN_ITERATIONS: usize = 60;
/// Grid constants for the level-0 filter scan.
const INIT_ALPHA: f64 = 5.0;
const INIT_Q: f64 = 0.05;

/// Multi-level complex exponential least squares.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QcelsConfig {
    pub k: usize,
    pub t0: f64,
    pub n0: usize,
    pub nj: usize,
    /// Level `j` uses depth `T₀·2ʲ`, `j = 0, …, levels − 1`.
    pub levels: usize,
    pub sigma: f64,
}

impl QcelsConfig {
    /// Experiment defaults (`T₀ = 100`, `N₀ = 1000`, `N_j = 500`, `σ = 1`)
    /// with as many levels as fit under `target`.
    pub fn for_target(target: f64, k: usize) -> Self {
        let t0 = 100.0;
        let levels = if target >= t0 {
            ((target / t0).log2() + 1e-9).floor() as usize + 1
        } else {
            1
        };
        Self { k, t0, n0: 1000, nj: 500, levels, sigma: 1.0 }
    }

    pub fn final_depth(&self) -> f64 {
        self.t0 * 2f64.powi(self.levels as i32 - 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n0 == 0 || self.nj == 0 || self.levels == 0 {
            return Err(Error::invalid("K, N0, Nj and levels must be at least 1"));
        }
        if !(self.t0 > 0.0 && self.sigma > 0.0) {
            return Err(Error::invalid("T0 and sigma must be positive"));
        }
        Ok(())
    }
}

/// `(1/N) Σ_n |Z_n − Σ_k r_k e^{−iθ_k t_n}|²`
pub fn qcels_loss(dataset: &Dataset, r: &[Complex64], theta: &[f64]) -> Result<f64> {
    if r.len() != theta.len() {
        return Err(Error::invalid("r and theta must have equal length"));
    }
    if dataset.is_empty() {
        return Err(Error::invalid("loss of an empty dataset"));
    }
    let total: f64 = dataset
        .shots
        .iter()
        .map(|s| {
            let model: Complex64 = r
                .iter()
                .zip(theta)
                .map(|(rk, &th)| rk * Complex64::from_polar(1.0, -th * s.t))
                .sum();
            (s.z - model).norm_sqr()
        })
        .sum();
    Ok(total / dataset.len() as f64)
}

/// Loss with the amplitudes eliminated by a linear least-squares solve.
/// Returns `None` when the exponentials are numerically collinear.
fn projected_loss(dataset: &Dataset, theta: &[f64]) -> Option<f64> {
    let a = ComplexMatrix::from_fn(dataset.len(), theta.len(), |n, k| {
        Complex64::from_polar(1.0, -theta[k] * dataset.shots[n].t)
    });
    let z: Vec<Complex64> = dataset.shots.iter().map(|s| s.z).collect();
    let r = lstsq_complex(&a, &z).ok()?;
    qcels_loss(dataset, &r, theta).ok()
}

/// Coarse scan plus golden-section search of coordinate `k` over
/// `[lo, hi]`. Returns the best point and its loss.
fn refine_coordinate(dataset: &Dataset, theta: &mut [f64], k: usize, lo: f64, hi: f64, singular: &mut bool) -> f64 {
    let mut eval = |x: f64, theta: &mut [f64]| -> f64 {
        theta[k] = x;
        projected_loss(dataset, theta).unwrap_or_else(|| {
            *singular = true;
            f64::INFINITY
        })
    };
    let start = theta[k];
    let mut best = (start, eval(start, theta));
    let h = (hi - lo) / (SCAN_POINTS - 1) as f64;
    for i in 0..SCAN_POINTS {
        let x = lo + h * i as f64;
        let f = eval(x, theta);
        if f < best.1 {
            best = (x, f);
        }
    }

    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = ((best.0 - h).max(lo), (best.0 + h).min(hi));
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = eval(c, theta);
    let mut fd = eval(d, theta);
    for _ in 0..GOLDEN_ITERATIONS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = eval(c, theta);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = eval(d, theta);
        }
        if b - a <= 1e-12 * (1.0 + best.0.abs()) {
            break;
        }
    }
    for (x, f) in [(c, fc), (d, fd)] {
        if f < best.1 {
            best = (x, f);
        }
    }
    theta[k] = best.0;
    best.1
}

/// Refines every coordinate within `center ± half_width`. Returns whether
/// any coordinate ended on the boundary of its region.
fn refine_level(dataset: &Dataset, theta: &mut [f64], half_width: f64, singular: &mut bool) -> bool {
    let centers = theta.to_vec();
    for _ in 0..PASSES {
        for k in 0..theta.len() {
            refine_coordinate(dataset, theta, k, centers[k] - half_width, centers[k] + half_width, singular);
        }
    }
    theta
        .iter()
        .zip(&centers)
        .any(|(t, c)| (t - c).abs() >= half_width * (1.0 - 1e-6))
}

/// Multi-level fit: level 0 is seeded by the blocked filter peaks, and each
/// further level doubles the depth and refines within a trust region of
/// half-width `π/T_{j−1}`.
///
/// `degraded` is set when a refinement pressed against its trust-region
/// boundary at the last level or hit collinear exponentials.
pub fn mmqcels_run<R: Rng + ?Sized>(model: &SpectralModel, config: &QcelsConfig, rng: &mut R) -> Result<EstimateResult> {
    config.validate()?;
    let mut t_max: f64 = 0.0;
    let mut t_total = 0.0;
    let mut singular = false;
    let mut pinned = false;
    let mut theta: Vec<f64> = Vec::new();

    for level in 0..config.levels {
        let depth = config.t0 * 2f64.powi(level as i32);
        let shots = if level == 0 { config.n0 } else { config.nj };
        let dataset = generate_dataset(model, shots, depth, config.sigma, rng)?;
        let (m, s) = dataset.cost();
        t_max = t_max.max(m);
        t_total += s;

        let half_width = if level == 0 {
            theta = peak_search(&filter_grid(&dataset, depth, INIT_Q)?, config.k, INIT_ALPHA, false)?;
            PI / depth
        } else {
            PI / (depth / 2.0)
        };
        pinned = refine_level(&dataset, &mut theta, half_width, &mut singular);
    }

    let mut estimates = theta;
    estimates.sort_by(f64::total_cmp);
    Ok(EstimateResult {
        algorithm: Algorithm::MmQcels,
        estimates,
        t_max,
        t_total,
        degraded: singular || pinned,
        config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    })
}
