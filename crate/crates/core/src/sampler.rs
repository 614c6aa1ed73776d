//! Hadamard-test data generation: time sampling, single-shot measurement
//! outcomes and cost accounting.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{exact_signal, SpectralModel};

/// Seeded generator for one independent stream of a master seed.
///
/// Streams of the same master seed never overlap, so trials can be fanned
/// out to any number of workers and still reproduce bit for bit.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Whether evolution times are arbitrary reals or integer powers of a
/// black-box unitary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeMode {
    Real,
    Integer,
}

/// One Hadamard-test record. `z = X + iY` with `X, Y ∈ {±1}`, or exactly 1
/// at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shot {
    pub t: f64,
    pub z: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub shots: Vec<Shot>,
    /// Depth parameter `T` of the sampling density.
    pub depth: f64,
    pub sigma: f64,
    pub mode: TimeMode,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.shots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shots.is_empty()
    }

    pub fn cost(&self) -> (f64, f64) {
        dataset_cost(self)
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {value}")))
    }
}

/// Draws `s ~ N(0, T²)` and returns it if `|s| ≤ σT`, otherwise 0: the
/// truncated mass becomes a point mass at the origin.
pub fn sample_time<R: Rng + ?Sized>(depth: f64, sigma: f64, rng: &mut R) -> Result<f64> {
    check_positive("T", depth)?;
    check_positive("sigma", sigma)?;
    let s: f64 = rng.sample::<f64, _>(StandardNormal) * depth;
    Ok(if s.abs() <= sigma * depth { s } else { 0.0 })
}

/// Simulates one real-part and one imaginary-part Hadamard test at time `t`.
///
/// Negative times are simulated at the signed time directly, which keeps
/// `𝔼[z] = 𝒵(t)` for both signs.
pub fn hadamard_shot<R: Rng + ?Sized>(model: &SpectralModel, t: f64, rng: &mut R) -> Shot {
    if t == 0.0 {
        return Shot { t, z: Complex64::new(1.0, 0.0) };
    }
    let signal = exact_signal(model, t);
    let x = if rng.random::<f64>() < (1.0 + signal.re) / 2.0 { 1.0 } else { -1.0 };
    let y = if rng.random::<f64>() < (1.0 + signal.im) / 2.0 { 1.0 } else { -1.0 };
    Shot { t, z: Complex64::new(x, y) }
}

/// `N` independent shots at truncated-Gaussian times.
pub fn generate_dataset<R: Rng + ?Sized>(
    model: &SpectralModel,
    n: usize,
    depth: f64,
    sigma: f64,
    rng: &mut R,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::invalid("a dataset needs at least one shot"));
    }
    let mut shots = Vec::with_capacity(n);
    for _ in 0..n {
        let t = sample_time(depth, sigma, rng)?;
        shots.push(hadamard_shot(model, t, rng));
    }
    Ok(Dataset { shots, depth, sigma, mode: TimeMode::Real })
}

/// `(T_max, T_total) = (max |t_n|, Σ |t_n|)`.
pub fn dataset_cost(dataset: &Dataset) -> (f64, f64) {
    dataset
        .shots
        .iter()
        .fold((0.0_f64, 0.0), |(m, s), shot| (m.max(shot.t.abs()), s + shot.t.abs()))
}

/// Normalizing constant `W` of the periodic Gaussian, with the lattice sum
/// cut at `|j| ≤ 20`.
fn periodic_weight(depth: f64) -> f64 {
    let sum: f64 = (-20..=20_i32)
        .map(|j| {
            let x = 2.0 * PI * j as f64;
            (-x * x * depth * depth / 2.0).exp()
        })
        .sum();
    1.0 / sum
}

/// Fourier coefficient `φ̂_p(k) = W e^{−k²/2T²} / (√(2π) T)` of the periodic
/// Gaussian.
pub fn periodic_gaussian_coefficient(k: i64, depth: f64) -> f64 {
    let k = k as f64;
    periodic_weight(depth) / ((2.0 * PI).sqrt() * depth) * (-k * k / (2.0 * depth * depth)).exp()
}

/// Explicit probability table of the integer time distribution `a(k)`:
/// `φ̂_p(k)` for `1 ≤ |k| ≤ ⌊σT⌋`, with every remaining unit of mass on 0.
#[derive(Clone, Debug)]
pub struct IntegerTimeTable {
    support: i64,
    probabilities: Vec<f64>,
    cdf: Vec<f64>,
}

impl IntegerTimeTable {
    pub fn new(depth: f64, sigma: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        if !(depth >= 1.0 && depth.is_finite()) {
            return Err(Error::invalid(format!("integer-time sampling needs T >= 1, got {depth}")));
        }
        let support = (sigma * depth).floor() as i64;
        let prefactor = periodic_weight(depth) / ((2.0 * PI).sqrt() * depth);
        let mut probabilities: Vec<f64> = (-support..=support)
            .map(|k| {
                let k = k as f64;
                prefactor * (-k * k / (2.0 * depth * depth)).exp()
            })
            .collect();
        let center = support as usize;
        let kept: f64 = probabilities
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != center)
            .map(|(_, p)| p)
            .sum();
        probabilities[center] = (1.0 - kept).max(0.0);
        let total: f64 = probabilities.iter().sum();
        for p in probabilities.iter_mut() {
            *p /= total;
        }
        let mut acc = 0.0;
        let cdf = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Self { support, probabilities, cdf })
    }

    /// Largest `|k|` with nonzero probability.
    pub fn support(&self) -> i64 {
        self.support
    }

    pub fn probability(&self, k: i64) -> f64 {
        if k.abs() > self.support {
            0.0
        } else {
            self.probabilities[(k + self.support) as usize]
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.random();
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1);
        idx as i64 - self.support
    }
}

/// Single draw from `a(k)`. Builds the table on every call; use
/// [`IntegerTimeTable`] directly when drawing many times.
pub fn sample_integer_time<R: Rng + ?Sized>(depth: f64, sigma: f64, rng: &mut R) -> Result<i64> {
    Ok(IntegerTimeTable::new(depth, sigma)?.sample(rng))
}

/// Integer-power counterpart of [`generate_dataset`].
pub fn generate_integer_dataset<R: Rng + ?Sized>(
    model: &SpectralModel,
    n: usize,
    depth: f64,
    sigma: f64,
    rng: &mut R,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::invalid("a dataset needs at least one shot"));
    }
    let table = IntegerTimeTable::new(depth, sigma)?;
    let shots = (0..n)
        .map(|_| {
            let k = table.sample(rng) as f64;
            hadamard_shot(model, k, rng)
        })
        .collect();
    Ok(Dataset { shots, depth, sigma, mode: TimeMode::Integer })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(lambda: f64) -> SpectralModel {
        SpectralModel::new(vec![lambda], vec![1.0], vec![0]).unwrap()
    }

    #[test]
    fn time_sampling_limits() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..1000 {
            let t = sample_time(1.0, 10.0, &mut rng).unwrap();
            assert!(t != 0.0 && t.abs() <= 10.0);
        }
        for _ in 0..1000 {
            assert_eq!(sample_time(1.0, 1e-6, &mut rng).unwrap().abs() <= 1e-6, true);
        }
        assert!(sample_time(0.0, 1.0, &mut rng).is_err());
        assert!(sample_time(1.0, -1.0, &mut rng).is_err());
    }

    #[test]
    fn second_moment_matches_truncated_density() {
        // E[t²] = T² (1 − 2 ∫_σ^∞ s² φ(s) ds) and ∫_σ^∞ s² φ = σφ(σ) + Φc(σ).
        // Tail integrals are summed by the trapezoid rule on a fine mesh.
        let (t, sigma) = (2.0, 3.0);
        let phi = |s: f64| (-s * s / 2.0).exp() / (2.0 * PI).sqrt();
        let h = 1e-4;
        let tail: f64 = (0..200_000)
            .map(|i| {
                let s = sigma + h * i as f64;
                let w = if i == 0 { 0.5 } else { 1.0 };
                w * s * s * phi(s) * h
            })
            .sum();
        let expected = t * t * (1.0 - 2.0 * tail);
        let mut rng = stream_rng(2, 0);
        let n = 100_000;
        let m2: f64 = (0..n)
            .map(|_| sample_time(t, sigma, &mut rng).unwrap().powi(2))
            .sum::<f64>()
            / n as f64;
        assert!((m2 - expected).abs() < 0.03 * expected, "{m2} vs {expected}");
    }

    #[test]
    fn shot_outcomes() {
        let mut rng = stream_rng(3, 0);
        let pure = single(0.0);
        let mut plus = 0;
        for _ in 0..2000 {
            let s = hadamard_shot(&pure, 1.3, &mut rng);
            assert_eq!(s.z.re, 1.0);
            if s.z.im > 0.0 {
                plus += 1;
            }
        }
        assert!((800..1200).contains(&plus));
        assert_eq!(hadamard_shot(&pure, 0.0, &mut rng).z, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn shot_mean_is_unbiased() {
        let model = SpectralModel::new(vec![-0.4, 0.3, 0.7], vec![0.6, 0.25, 0.15], vec![0]).unwrap();
        let n = 100_000;
        for &t in &[2.5_f64, -7.0] {
            let mut rng = stream_rng(4, t.to_bits());
            let mean: Complex64 = (0..n)
                .map(|_| hadamard_shot(&model, t, &mut rng).z)
                .sum::<Complex64>()
                / n as f64;
            let exact = exact_signal(&model, t);
            let tol = 4.0 / (n as f64).sqrt();
            assert!((mean.re - exact.re).abs() < tol && (mean.im - exact.im).abs() < tol);
        }
    }

    #[test]
    fn dataset_generation_and_cost() {
        let model = single(0.2);
        let mut rng = stream_rng(5, 0);
        let d = generate_dataset(&model, 500, 200.0, 1.0, &mut rng).unwrap();
        assert_eq!(d.len(), 500);
        let (t_max, t_total) = d.cost();
        assert!(t_max <= 200.0 && t_total >= t_max);
        for s in &d.shots {
            if s.t == 0.0 {
                assert_eq!(s.z, Complex64::new(1.0, 0.0));
            } else {
                assert_eq!(s.z.norm_sqr(), 2.0);
            }
        }
        let again = generate_dataset(&model, 500, 200.0, 1.0, &mut stream_rng(5, 0)).unwrap();
        assert_eq!(d, again);

        let one = generate_dataset(&model, 1, 3.0, 2.0, &mut rng).unwrap();
        assert_eq!(one.cost().1, one.shots[0].t.abs());
        assert!(generate_dataset(&model, 0, 3.0, 2.0, &mut rng).is_err());
    }

    #[test]
    fn cost_examples() {
        let mk = |ts: &[f64], mode| Dataset {
            shots: ts.iter().map(|&t| Shot { t, z: Complex64::new(1.0, 0.0) }).collect(),
            depth: 1.0,
            sigma: 1.0,
            mode,
        };
        assert_eq!(dataset_cost(&mk(&[1.0, -2.0, 0.0], TimeMode::Real)), (2.0, 3.0));
        assert_eq!(dataset_cost(&mk(&[0.0, 0.0], TimeMode::Real)), (0.0, 0.0));
        assert_eq!(dataset_cost(&mk(&[3.0, -3.0], TimeMode::Integer)), (3.0, 6.0));
    }

    #[test]
    fn integer_table_matches_explicit_sum() {
        let table = IntegerTimeTable::new(1.0, 10.0).unwrap();
        assert_eq!(table.support(), 10);
        let total: f64 = (-10..=10).map(|k| table.probability(k)).sum();
        assert!((total - 1.0).abs() < 1e-15);
        // Independent oracle: Σ_{k∈ℤ} e^{−k²/2} over |k| ≤ 10⁶ fixes W through
        // φ_p(0) = 1 (Poisson summation) and hence every coefficient.
        let theta_sum: f64 = (-1_000_000..=1_000_000_i64)
            .map(|k| (-(k as f64).powi(2) / 2.0).exp())
            .sum();
        for k in 1..=10_i64 {
            let oracle = (-(k as f64).powi(2) / 2.0).exp() / theta_sum;
            let got = table.probability(k);
            assert!((got - oracle).abs() <= 1e-15 + 1e-12 * oracle, "k={k}: {got} vs {oracle}");
            assert_eq!(table.probability(-k), got);
            assert!(got / table.probability(0) <= (-(k as f64).powi(2) / 2.0).exp() * (1.0 + 1e-12));
        }
        assert_eq!(table.probability(11), 0.0);

        let tiny = IntegerTimeTable::new(1.5, 0.5).unwrap();
        assert_eq!(tiny.support(), 0);
        let mut rng = stream_rng(6, 0);
        assert!((0..100).all(|_| tiny.sample(&mut rng) == 0));

        assert!(IntegerTimeTable::new(0.5, 1.0).is_err());
        assert!(IntegerTimeTable::new(2.0, 0.0).is_err());
    }

    #[test]
    fn integer_sampler_frequencies() {
        let table = IntegerTimeTable::new(2.0, 2.0).unwrap();
        let mut rng = stream_rng(7, 0);
        let n = 100_000;
        let mut counts = [0usize; 9];
        for _ in 0..n {
            counts[(table.sample(&mut rng) + 4) as usize] += 1;
        }
        for k in -4..=4_i64 {
            let p = table.probability(k);
            let freq = counts[(k + 4) as usize] as f64 / n as f64;
            assert!((freq - p).abs() < 5.0 * (p * (1.0 - p) / n as f64).sqrt() + 1e-9);
        }
    }
}
