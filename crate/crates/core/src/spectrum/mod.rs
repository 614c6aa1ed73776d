//! Spectral models: eigenvalue/overlap pairs plus the dominant index set.
//!
//! Every estimator in this crate consumes only `{(λ_m, p_m)}`; no state
//! vector is ever formed. Hamiltonians are diagonalized once, their spectrum
//! rescaled into `[−π/4, π/4]`, and overlaps are assigned directly.

mod lattice;

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sym_eig, SymMatrix};
use crate::sampler::stream_rng;

pub use lattice::{build_hubbard, build_tfim};

const MASS_TOLERANCE: f64 = 1e-12;

/// Eigenvalues (radians, ascending), overlaps and the dominant set.
///
/// Construction enforces `Σ p = 1`, `p ≥ 0`, `|λ| ≤ π` and the sufficiently
/// dominant condition `min_{i∈D} p_i > Σ_{i∉D} p_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct SpectralModel {
    eigenvalues: Vec<f64>,
    overlaps: Vec<f64>,
    dominant: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    eigenvalues: Vec<f64>,
    overlaps: Vec<f64>,
    dominant: Vec<usize>,
}

impl TryFrom<RawModel> for SpectralModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        SpectralModel::new(raw.eigenvalues, raw.overlaps, raw.dominant)
    }
}

impl From<SpectralModel> for RawModel {
    fn from(m: SpectralModel) -> Self {
        RawModel {
            eigenvalues: m.eigenvalues,
            overlaps: m.overlaps,
            dominant: m.dominant,
        }
    }
}

impl SpectralModel {
    /// Validates and stores a model. Pairs are re-sorted by eigenvalue if
    /// needed, with the dominant indices remapped accordingly.
    pub fn new(eigenvalues: Vec<f64>, overlaps: Vec<f64>, dominant: Vec<usize>) -> Result<Self> {
        let m = eigenvalues.len();
        if m == 0 {
            return Err(Error::invalid("a spectral model needs at least one eigenvalue"));
        }
        if overlaps.len() != m {
            return Err(Error::invalid(format!(
                "{m} eigenvalues but {} overlaps",
                overlaps.len()
            )));
        }
        if dominant.is_empty() {
            return Err(Error::invalid("the dominant set must not be empty"));
        }
        let mut seen = vec![false; m];
        for &d in &dominant {
            if d >= m {
                return Err(Error::invalid(format!("dominant index {d} out of range 0..{m}")));
            }
            if seen[d] {
                return Err(Error::invalid(format!("dominant index {d} repeated")));
            }
            seen[d] = true;
        }
        if let Some(&bad) = eigenvalues.iter().find(|l| !l.is_finite() || l.abs() > PI) {
            return Err(Error::invalid(format!("eigenvalue {bad} outside [-pi, pi]")));
        }
        if let Some(&bad) = overlaps.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::invalid(format!("overlap {bad} is negative or not finite")));
        }
        let total: f64 = overlaps.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::invalid(format!("overlaps sum to {total}, expected 1")));
        }

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| eigenvalues[i].total_cmp(&eigenvalues[j]).then(i.cmp(&j)));
        let mut rank = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut dominant: Vec<usize> = dominant.iter().map(|&d| rank[d]).collect();
        dominant.sort_unstable();
        let model = Self {
            eigenvalues: order.iter().map(|&i| eigenvalues[i]).collect(),
            overlaps: order.iter().map(|&i| overlaps[i]).collect(),
            dominant,
        };

        let (p_min, p_tail) = (model.p_min(), model.p_tail());
        if p_min <= p_tail {
            return Err(Error::ModelCondition(format!(
                "p_min = {p_min} does not exceed p_tail = {p_tail}"
            )));
        }
        Ok(model)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }

    pub fn dominant(&self) -> &[usize] {
        &self.dominant
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_dominant(&self, index: usize) -> bool {
        self.dominant.binary_search(&index).is_ok()
    }

    pub fn dominant_eigenvalues(&self) -> Vec<f64> {
        self.dominant.iter().map(|&i| self.eigenvalues[i]).collect()
    }

    pub fn p_min(&self) -> f64 {
        self.dominant
            .iter()
            .map(|&i| self.overlaps[i])
            .fold(f64::INFINITY, f64::min)
    }

    pub fn p_tail(&self) -> f64 {
        (0..self.len())
            .filter(|&i| !self.is_dominant(i))
            .map(|i| self.overlaps[i])
            .sum()
    }

    /// Rotates every phase by `shift` and wraps the result into `[−π, π)`.
    /// Only meaningful for unitaries, where eigenphases live on the circle.
    pub fn rotate_phases(&self, shift: f64) -> Result<Self> {
        let wrapped = self
            .eigenvalues
            .iter()
            .map(|&l| (l + shift + PI).rem_euclid(2.0 * PI) - PI)
            .collect();
        Self::new(wrapped, self.overlaps.clone(), self.dominant.clone())
    }
}

/// Spectral gaps and overlap statistics of a model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// Smallest distance between two dominant eigenvalues; `∞` with a single
    /// dominant mode.
    pub delta_dom: f64,
    /// Smallest distance from a dominant eigenvalue to any other eigenvalue.
    pub delta: f64,
    pub p_min: f64,
    pub p_tail: f64,
}

/// `𝒵(t) = Σ_m p_m e^{−iλ_m t}`
pub fn exact_signal(model: &SpectralModel, t: f64) -> Complex64 {
    model
        .eigenvalues
        .iter()
        .zip(&model.overlaps)
        .map(|(&l, &p)| Complex64::from_polar(p, -l * t))
        .sum()
}

pub fn gap_report(model: &SpectralModel) -> GapReport {
    let lambda = &model.eigenvalues;
    let mut delta_dom = f64::INFINITY;
    let mut delta = f64::INFINITY;
    for &i in &model.dominant {
        for j in 0..lambda.len() {
            if j == i {
                continue;
            }
            let d = (lambda[i] - lambda[j]).abs();
            delta = delta.min(d);
            if model.is_dominant(j) {
                delta_dom = delta_dom.min(d);
            }
        }
    }
    GapReport {
        delta_dom,
        delta,
        p_min: model.p_min(),
        p_tail: model.p_tail(),
    }
}

/// Rescales a spectrum by `π / (4 max|λ|)` so it fits in `[−π/4, π/4]`.
pub fn normalize_spectrum(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    if eigenvalues.is_empty() {
        return Err(Error::invalid("cannot normalize an empty spectrum"));
    }
    let scale = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    if scale == 0.0 {
        return Err(Error::DivisionByZero("spectrum is identically zero".into()));
    }
    Ok(eigenvalues
        .iter()
        .map(|&l| {
            if l.abs() == scale {
                FRAC_PI_4.copysign(l)
            } else {
                FRAC_PI_4 * l / scale
            }
        })
        .collect())
}

/// Puts the given weights on the dominant indices and splits the remaining
/// mass over the other modes with a seeded flat Dirichlet draw.
pub fn assign_overlaps(
    eigenvalues: &[f64],
    dominant_indices: &[usize],
    dominant_weights: &[f64],
    seed: u64,
) -> Result<SpectralModel> {
    let m = eigenvalues.len();
    if dominant_indices.len() != dominant_weights.len() {
        return Err(Error::invalid("one weight per dominant index is required"));
    }
    if dominant_weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::invalid("dominant weights must be positive"));
    }
    let assigned: f64 = dominant_weights.iter().sum();
    if assigned > 1.0 {
        return Err(Error::invalid(format!(
            "dominant weights sum to {assigned}, which exceeds 1"
        )));
    }
    let mut overlaps = vec![0.0; m];
    let mut taken = vec![false; m];
    for (&i, &w) in dominant_indices.iter().zip(dominant_weights) {
        if i >= m || taken[i] {
            return Err(Error::invalid(format!("invalid or repeated dominant index {i}")));
        }
        taken[i] = true;
        overlaps[i] = w;
    }

    let residual = 1.0 - assigned;
    let tail: Vec<usize> = (0..m).filter(|&i| !taken[i]).collect();
    if tail.is_empty() {
        if residual > MASS_TOLERANCE {
            return Err(Error::invalid(format!(
                "no tail modes to hold the remaining mass {residual}"
            )));
        }
    } else if residual > 0.0 {
        let mut rng = stream_rng(seed, 0x7a11);
        let draws: Vec<f64> = tail.iter().map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = draws.iter().sum();
        for (&i, g) in tail.iter().zip(&draws) {
            overlaps[i] = residual * g / total;
        }
    }
    SpectralModel::new(eigenvalues.to_vec(), overlaps, dominant_indices.to_vec())
}

/// Random spectrum of dimension `M` with an isolated near-degenerate
/// dominant pair `(λ₀, λ₀ + gap)` carrying overlaps 0.4 each.
///
/// `λ₀` is uniform in `[−π/4, −0.1]`; the other `M − 2` eigenvalues are
/// uniform in `[λ₀ + gap + 0.1, π/4]`. Everything already lies inside
/// `[−π/4, π/4]`, so no rescaling is applied and `Δ_dom` equals `gap`.
pub fn build_toy(dim: usize, gap: f64, seed: u64) -> Result<SpectralModel> {
    if dim < 3 {
        return Err(Error::invalid(format!("toy model needs M >= 3, got {dim}")));
    }
    if !(gap > 0.0 && gap < 1.0) {
        return Err(Error::invalid(format!("toy gap must lie in (0, 1), got {gap}")));
    }
    let upper = (-0.1_f64).min(FRAC_PI_4 - 0.1 - gap);
    if upper <= -FRAC_PI_4 {
        return Err(Error::invalid(format!("gap {gap} leaves no room for the tail")));
    }
    let mut rng = stream_rng(seed, 0x70);
    let low = rng.random_range(-FRAC_PI_4..upper);
    let high = low + gap;
    let mut eigenvalues = vec![low, high];
    for _ in 2..dim {
        eigenvalues.push(rng.random_range((high + 0.1)..=FRAC_PI_4));
    }
    assign_overlaps(&eigenvalues, &[0, 1], &[0.4, 0.4], seed)
}

/// Diagonalizes `h`, normalizes the spectrum and places `weights` on the
/// lowest `weights.len()` eigenvalues.
pub fn model_from_hamiltonian(h: &SymMatrix, weights: &[f64], seed: u64) -> Result<SpectralModel> {
    let eig = sym_eig(h)?;
    let eigenvalues = normalize_spectrum(&eig.values)?;
    let dominant: Vec<usize> = (0..weights.len()).collect();
    assign_overlaps(&eigenvalues, &dominant, weights, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(SpectralModel::new(vec![0.0, 0.1], vec![0.5, 0.5], vec![0]).is_err());
        assert!(SpectralModel::new(vec![0.0, 0.1], vec![0.6, 0.5], vec![0]).is_err());
        assert!(SpectralModel::new(vec![0.0, 4.0], vec![0.6, 0.4], vec![0]).is_err());
        assert!(SpectralModel::new(vec![0.0, 0.1], vec![0.6, 0.4], vec![2]).is_err());
        assert!(SpectralModel::new(vec![0.0, 0.1], vec![0.6, 0.4], vec![]).is_err());
        assert!(SpectralModel::new(vec![0.0, 0.1], vec![0.6, 0.4], vec![0]).is_ok());
    }

    #[test]
    fn unsorted_input_is_reordered() {
        let m = SpectralModel::new(vec![0.5, -0.5, 0.0], vec![0.1, 0.6, 0.3], vec![1, 2]).unwrap();
        assert_eq!(m.eigenvalues(), &[-0.5, 0.0, 0.5]);
        assert_eq!(m.overlaps(), &[0.6, 0.3, 0.1]);
        assert_eq!(m.dominant(), &[0, 1]);
    }

    #[test]
    fn signal_examples() {
        let pure = SpectralModel::new(vec![0.0], vec![1.0], vec![0]).unwrap();
        assert_eq!(exact_signal(&pure, 3.7), Complex64::new(1.0, 0.0));

        let pair = SpectralModel::new(
            vec![-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2],
            vec![0.5, 0.5],
            vec![0, 1],
        );
        // p_min = 0.5 > p_tail = 0.
        let pair = pair.unwrap();
        let z = exact_signal(&pair, 1.0);
        assert!(z.norm() < 1e-15);
        assert_eq!(exact_signal(&pair, 0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn gap_examples() {
        let m = SpectralModel::new(vec![0.0, 0.2, 0.5], vec![0.45, 0.45, 0.1], vec![0, 1]).unwrap();
        let g = gap_report(&m);
        assert!((g.delta_dom - 0.2).abs() < 1e-15 && (g.delta - 0.2).abs() < 1e-15);

        let m = SpectralModel::new(vec![0.0, 0.2, 0.21], vec![0.45, 0.45, 0.1], vec![0, 1]).unwrap();
        assert!((gap_report(&m).delta - 0.01).abs() < 1e-12);

        let m = SpectralModel::new(vec![0.0, 0.2], vec![0.7, 0.3], vec![0]).unwrap();
        assert_eq!(gap_report(&m).delta_dom, f64::INFINITY);
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_spectrum(&[-4.0, 0.0, 4.0]).unwrap();
        assert_eq!(n, vec![-FRAC_PI_4, 0.0, FRAC_PI_4]);
        let n = normalize_spectrum(&[-2.0, 1.0]).unwrap();
        assert_eq!(n[0], -FRAC_PI_4);
        assert!((n[1] - std::f64::consts::PI / 8.0).abs() < 1e-16);
        assert!(matches!(normalize_spectrum(&[0.0, 0.0]), Err(Error::DivisionByZero(_))));
        assert!(normalize_spectrum(&[]).is_err());
    }

    #[test]
    fn overlap_assignment() {
        let lambda: Vec<f64> = (0..20).map(|i| -0.7 + 0.07 * i as f64).collect();
        let m = assign_overlaps(&lambda, &[0, 1], &[0.4, 0.4], 3).unwrap();
        assert_eq!(m.overlaps()[0], 0.4);
        assert_eq!(m.overlaps()[1], 0.4);
        assert!((m.p_tail() - 0.2).abs() < 1e-12);
        assert!(m.overlaps()[2..].iter().all(|&p| p > 0.0));

        let other = assign_overlaps(&lambda, &[0, 1], &[0.4, 0.4], 4).unwrap();
        assert_eq!(other.overlaps()[..2], m.overlaps()[..2]);
        assert_ne!(other.overlaps()[2..], m.overlaps()[2..]);

        let near_pure = assign_overlaps(&[0.0, 0.3], &[0], &[1.0 - 1e-12], 0).unwrap();
        assert!((near_pure.p_tail() - 1e-12).abs() < 1e-15);

        // p_min = 0.3 < p_tail = 0.4
        assert!(matches!(
            assign_overlaps(&lambda, &[0, 1], &[0.3, 0.3], 1),
            Err(Error::ModelCondition(_))
        ));
    }

    #[test]
    fn toy_model() {
        let m = build_toy(20, 1e-3, 9).unwrap();
        assert_eq!(m.len(), 20);
        assert_eq!(m.dominant(), &[0, 1]);
        let lambda = m.eigenvalues();
        let max = lambda.iter().fold(0.0_f64, |a, l| a.max(l.abs()));
        assert!(max <= FRAC_PI_4);
        let g = gap_report(&m);
        assert!((g.delta_dom - 1e-3).abs() < 1e-15);
        assert!((g.p_tail - 0.2).abs() < 1e-12);
        assert_eq!(build_toy(20, 1e-3, 9).unwrap(), m);

        let small = build_toy(3, 0.5, 1).unwrap();
        assert!((small.overlaps().iter().sum::<f64>() - 1.0).abs() < 1e-12);

        assert!(build_toy(2, 0.1, 0).is_err());
        assert!(build_toy(5, 1.5, 0).is_err());
    }

    #[test]
    fn phase_rotation_wraps() {
        let m = SpectralModel::new(vec![0.0, 0.5], vec![0.8, 0.2], vec![0]).unwrap();
        let r = m.rotate_phases(PI - 0.25).unwrap();
        // 0 → π − 0.25; 0.5 → π + 0.25 ≡ −π + 0.25.
        assert!((r.eigenvalues()[0] - (-PI + 0.25)).abs() < 1e-12);
        assert!((r.eigenvalues()[1] - (PI - 0.25)).abs() < 1e-12);
        assert_eq!(r.dominant(), &[1]);
    }
}
