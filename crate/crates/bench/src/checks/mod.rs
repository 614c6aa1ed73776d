//! The numerical acceptance checks, shared by the `acceptance` test target
//! and `qmegs check`.
//!
//! Every check runs at its stated tolerance and trial count and reports
//! a verdict plus a one-line summary of what it measured. A check passes
//! only if its verdict holds and it finishes within its time budget.

pub mod oracles;

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use qmegs::baselines::{esprit_from_signal, mmqcels_run, qpe_distribution, qpe_run, QcelsConfig, QpeConfig};
use qmegs::estimator::{grid_average, grid_theta, periodic_gaussian};
use qmegs::linalg::{sym_eig, top_singular_subspace, ComplexMatrix, Hankel, SubspaceOptions, SymMatrix};
use qmegs::sampler::generate_dataset;
use qmegs::spectrum::{build_hubbard, build_tfim, build_toy, exact_signal};
use qmegs::{qmegs_int_run, qmegs_run, stream_rng, Algorithm, Complex64, QmegsConfig, SpectralModel};

use crate::config::{ExperimentConfig, ModelSpec, Schedule};
use crate::error::BenchResult;
use crate::metrics::maxmin_error;
use crate::records::{to_csv_string, SweepRecord};
use crate::sweep::{run_sweep, run_sweep_with_workers};

/// What a check measured.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    check: fn() -> BenchResult<Verdict>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} [{}] {} ({:.1} s of {} s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 13] = [
    Criterion { id: 1, title: "truncation bound", budget: secs(10), check: truncation_bound },
    Criterion { id: 2, title: "grid concentration", budget: secs(120), check: concentration },
    Criterion { id: 3, title: "coverage at T = 200", budget: secs(60), check: coverage },
    Criterion { id: 4, title: "QMEGS error slope on TFIM", budget: secs(600), check: qmegs_slope },
    Criterion { id: 5, title: "ESPRIT error slope on TFIM", budget: secs(1200), check: esprit_slope },
    Criterion { id: 6, title: "QMEGS beats QPE at equal depth", budget: secs(300), check: qpe_comparison },
    Criterion { id: 7, title: "small dominant gap", budget: secs(900), check: small_gap },
    Criterion { id: 8, title: "noiseless ESPRIT", budget: secs(5), check: noiseless_esprit },
    Criterion { id: 9, title: "QPE distribution", budget: secs(30), check: qpe_checks },
    Criterion { id: 10, title: "integer-power coverage", budget: secs(120), check: integer_power },
    Criterion { id: 11, title: "periodic Gaussian sandwich", budget: secs(5), check: sandwich },
    Criterion { id: 12, title: "linear-algebra oracles", budget: secs(30), check: linalg_oracles },
    Criterion { id: 13, title: "sweep determinism across workers", budget: secs(120), check: determinism },
];

pub fn criterion(id: u8) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

impl Criterion {
    /// Runs the check; an internal error counts as a failure.
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let verdict = (self.check)().unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let mut detail = verdict.detail;
        if elapsed > self.budget {
            detail.push_str("; over the time budget");
        }
        Outcome {
            id: self.id,
            title: self.title,
            passed: verdict.passed && elapsed <= self.budget,
            elapsed,
            budget: self.budget,
            detail,
        }
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Least-squares slope of `y` against `x`.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Median error and median `T_max` per depth, in schedule order.
fn medians_by_depth(records: &[SweepRecord], algorithm: Algorithm) -> Vec<(f64, f64, f64)> {
    let mut depths: Vec<f64> = records.iter().filter(|r| r.algorithm == algorithm).map(|r| r.depth).collect();
    depths.sort_by(f64::total_cmp);
    depths.dedup();
    depths
        .into_iter()
        .map(|d| {
            let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.algorithm == algorithm && r.depth == d).collect();
            let errors: Vec<f64> = rows.iter().map(|r| r.error).collect();
            let t_max: Vec<f64> = rows.iter().map(|r| r.t_max).collect();
            (d, median(&errors), median(&t_max))
        })
        .collect()
}

fn log_slope(points: &[(f64, f64, f64)]) -> f64 {
    let x: Vec<f64> = points.iter().map(|p| p.2.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    slope(&x, &y)
}

fn describe(points: &[(f64, f64, f64)]) -> String {
    points
        .iter()
        .map(|(d, e, _)| format!("T={d}: {e:.2e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn tfim_spec() -> ModelSpec {
    ModelSpec::Tfim { sites: 8, g: 4.0, seed: 1 }
}

fn toy_spec() -> ModelSpec {
    ModelSpec::Toy { m: 20, gap: 1e-3, seed: 1 }
}

fn truncation_bound() -> BenchResult<Verdict> {
    let mut rng = stream_rng(101, 0);
    let models: Vec<SpectralModel> = (0..50).map(|_| oracles::random_model(&mut rng, 6)).collect();
    let thetas: Vec<f64> = (0..100).map(|_| rng.random_range(-PI..PI)).collect();
    let mut passed = true;
    let mut parts = Vec::new();
    for sigma in [2.0_f64, 3.0, 4.0] {
        let bound = (-sigma * sigma).exp();
        let mut worst = 0.0_f64;
        for depth in [10.0, 100.0] {
            for model in &models {
                for &theta in &thetas {
                    let e = oracles::truncated_expectation(model, theta, depth, sigma);
                    worst = worst.max((e - oracles::gaussian_filter(model, theta, depth)).abs());
                }
            }
        }
        passed &= worst <= bound;
        parts.push(format!(
            "sigma={sigma}: max diff {worst:.3e} vs bound {bound:.3e} (mass at t=0: {:.3e})",
            oracles::truncated_mass(sigma)
        ));
    }
    Ok(Verdict::new(passed, parts.join("; ")))
}

fn concentration() -> BenchResult<Verdict> {
    let model = toy_spec().build()?.model;
    let (depth, sigma, q) = (10.0, 3.0, 0.05);
    let (delta, eta) = (0.05_f64, 0.05_f64);
    let thetas: Vec<f64> = (0..=qmegs::estimator::grid_last_index(depth, q)?).map(|j| grid_theta(j, depth, q)).collect();
    let points = thetas.len() + model.dominant().len();
    let n = ((8.0 / (delta * delta)) * (points as f64 / eta).ln()).ceil() as usize;
    let dominant = model.dominant_eigenvalues();
    let mut good = 0;
    let mut worst = 0.0_f64;
    for rep in 0..100 {
        let data = generate_dataset(&model, n, depth, sigma, &mut stream_rng(202, rep))?;
        let avg = grid_average(&data, depth, q)?;
        let mut max_e = thetas
            .iter()
            .zip(&avg)
            .map(|(&th, a)| (a - oracles::gaussian_filter(&model, th, depth)).norm())
            .fold(0.0, f64::max);
        for &l in &dominant {
            let a: Complex64 = data.shots.iter().map(|s| s.z * Complex64::from_polar(1.0, l * s.t)).sum::<Complex64>() / n as f64;
            max_e = max_e.max((a - oracles::gaussian_filter(&model, l, depth)).norm());
        }
        worst = worst.max(max_e);
        if max_e <= delta {
            good += 1;
        }
    }
    Ok(Verdict::new(
        good >= 90,
        format!("N = {n}, {} grid points: max|E| <= {delta} in {good}/100 repetitions (worst {worst:.4})", thetas.len()),
    ))
}

fn coverage() -> BenchResult<Verdict> {
    let model = toy_spec().build()?.model;
    let config = QmegsConfig::standard(200.0);
    let radius = config.alpha / config.depth;
    let dominant = model.dominant_eigenvalues();
    let mut hits = 0;
    for trial in 0..100 {
        let r = qmegs_run(&model, &config, &mut stream_rng(303, trial))?;
        if maxmin_error(&r.estimates, &dominant, false)? <= radius {
            hits += 1;
        }
    }
    Ok(Verdict::new(hits >= 95, format!("{hits}/100 trials cover both dominant eigenvalues within alpha/T = {radius}")))
}

fn tfim_sweep(algorithms: Vec<Algorithm>, schedule: Schedule, seed: u64) -> BenchResult<Vec<SweepRecord>> {
    let source = tfim_spec();
    let model = source.build()?.model;
    let config = ExperimentConfig::new(source, algorithms, schedule, 20, seed);
    run_sweep(&config, &model)
}

fn failures(records: &[SweepRecord]) -> usize {
    records.iter().filter(|r| r.failed()).count()
}

fn qmegs_slope() -> BenchResult<Verdict> {
    let records = tfim_sweep(vec![Algorithm::Qmegs], Schedule::new(100.0, 2.0, 5), 404)?;
    let points = medians_by_depth(&records, Algorithm::Qmegs);
    let s = log_slope(&points);
    Ok(Verdict::new(
        (-1.35..=-0.65).contains(&s) && failures(&records) == 0,
        format!("slope {s:.3} in [-1.35, -0.65]? medians {}", describe(&points)),
    ))
}

fn esprit_slope() -> BenchResult<Verdict> {
    let records = tfim_sweep(vec![Algorithm::Esprit], Schedule::new(100.0, 2.0, 5), 505)?;
    let points = medians_by_depth(&records, Algorithm::Esprit);
    let s = log_slope(&points);
    Ok(Verdict::new(
        (-1.9..=-1.1).contains(&s) && failures(&records) == 0,
        format!("slope {s:.3} in [-1.9, -1.1]? medians {}", describe(&points)),
    ))
}

fn qpe_comparison() -> BenchResult<Verdict> {
    let schedule = Schedule { first: 2, ..Schedule::new(100.0, 2.0, 4) };
    let records = tfim_sweep(vec![Algorithm::Qmegs, Algorithm::Qpe], schedule, 606)?;
    let ours = medians_by_depth(&records, Algorithm::Qmegs);
    let qpe = medians_by_depth(&records, Algorithm::Qpe);
    let mut passed = failures(&records) == 0;
    let mut parts = Vec::new();
    for (a, b) in ours.iter().zip(&qpe) {
        passed &= a.1 < b.1;
        parts.push(format!("T={}: {:.2e} (T_max {:.0}) vs QPE {:.2e} (T_max {:.0})", a.0, a.1, a.2, b.1, b.2));
    }
    // Normalization puts the lowest level at exactly -π/4 = 2π(-N_t/8)/N_t,
    // a QPE grid point for every d >= 3.
    let lowest = tfim_lowest()?;
    let n_t = 2f64.powi(QpeConfig::depth_for(400.0) as i32);
    let on_grid = (lowest * n_t / (2.0 * PI)).fract() == 0.0;
    parts.push(format!("lowest level {lowest:.6} on the QPE grid: {on_grid}"));
    Ok(Verdict::new(passed, parts.join(", ")))
}

fn tfim_lowest() -> BenchResult<f64> {
    Ok(tfim_spec().build()?.model.dominant_eigenvalues()[0])
}

fn small_gap() -> BenchResult<Verdict> {
    let model = toy_spec().build()?.model;
    let dominant = model.dominant_eigenvalues();
    let gap = dominant[1] - dominant[0];
    let mut passed = true;
    let mut parts = Vec::new();

    for depth in [200.0, 400.0, 800.0] {
        let config = QmegsConfig::standard(depth);
        let mut hits = 0;
        let mut t_max = 0.0_f64;
        for trial in 0..20 {
            let r = qmegs_run(&model, &config, &mut stream_rng(707, trial + depth as u64 * 100))?;
            t_max = t_max.max(r.t_max);
            if maxmin_error(&r.estimates, &dominant, false)? <= config.alpha / depth {
                hits += 1;
            }
        }
        passed &= hits >= 19 && t_max < 1.0 / gap;
        parts.push(format!("T={depth}: {hits}/20 covered"));
    }

    let depth = 25600.0;
    let config = QmegsConfig::standard(depth);
    let mut ours = Vec::new();
    let mut theirs = Vec::new();
    let mut t_max = Vec::new();
    for trial in 0..20 {
        let r = qmegs_run(&model, &config, &mut stream_rng(708, trial))?;
        t_max.push(r.t_max);
        ours.push(maxmin_error(&r.estimates, &dominant, false)?);
        let m = mmqcels_run(&model, &QcelsConfig::for_target(depth, 2), &mut stream_rng(709, trial))?;
        theirs.push(maxmin_error(&m.estimates, &dominant, false)?);
    }
    let (ours, theirs, t_max) = (median(&ours), median(&theirs), median(&t_max));
    let target = 10.0 * config.q / depth;
    passed &= t_max >= 4.0 * config.alpha / gap && ours <= target && theirs >= gap / 2.0;
    parts.push(format!(
        "T={depth} (median T_max {t_max:.0}): QMEGS {ours:.2e} <= {target:.2e}, MM-QCELS {theirs:.2e} >= {:.2e}",
        gap / 2.0
    ));
    Ok(Verdict::new(passed, parts.join("; ")))
}

fn noiseless_esprit() -> BenchResult<Verdict> {
    let mut rng = stream_rng(808, 0);
    let mut worst = 0.0_f64;
    for case in 0..30 {
        let k = 1 + case % 3;
        let lambda = loop {
            let mut l: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..3.0)).collect();
            l.sort_by(f64::total_cmp);
            if l.windows(2).all(|w| w[1] - w[0] > 0.05) {
                break l;
            }
        };
        let mut p: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        let model = SpectralModel::new(lambda.clone(), p, (0..k).collect())?;
        let samples: Vec<Complex64> = (0..100).map(|t| exact_signal(&model, t as f64)).collect();
        let est = esprit_from_signal(&samples, k)?;
        worst = worst.max(maxmin_error(&est, &lambda, false)?);
    }
    Ok(Verdict::new(worst <= 1e-8, format!("worst error {worst:.2e} over 30 models with K <= 3")))
}

fn qpe_checks() -> BenchResult<Verdict> {
    let mut rng = stream_rng(909, 0);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let model = oracles::random_model(&mut rng, 12);
        for d in 1..=14 {
            let p = qpe_distribution(&model, d)?;
            if p.iter().any(|&x| x < 0.0) {
                return Ok(Verdict::new(false, "negative outcome probability"));
            }
            worst = worst.max((p.iter().sum::<f64>() - 1.0).abs());
        }
    }
    let d = 7;
    let k = 19_i64;
    let lambda = 2.0 * PI * k as f64 / (1u64 << d) as f64;
    let model = SpectralModel::new(vec![lambda], vec![1.0], vec![0])?;
    let p = qpe_distribution(&model, d)?;
    let idx = (k + (1 << (d - 1))) as usize;
    let mut exact = (p[idx] - 1.0).abs() < 1e-12;
    for seed in 0..10 {
        let r = qpe_run(&model, &QpeConfig { d, n_samples: 15 }, &mut stream_rng(910, seed))?;
        exact &= r.estimates[0] == lambda;
    }
    Ok(Verdict::new(
        worst <= 1e-10 && exact,
        format!("max |sum - 1| = {worst:.2e} over 20 models, d <= 14; aligned mode exact: {exact}"),
    ))
}

fn integer_power() -> BenchResult<Verdict> {
    let mut config = QmegsConfig::standard(400.0);
    config.sigma = 3.0;
    let radius = config.alpha / config.depth;
    let mut hits = 0;
    let mut seam_hits = 0;
    let mut shift_rng = stream_rng(1010, 0);
    for seed in 0..5_u64 {
        let base = build_toy(20, 1e-3, 11 + seed)?;
        let shift = if seed == 0 {
            // Lower dominant phase 5e-4 below +π; its partner wraps to −π + 5e-4.
            PI - 5e-4 - base.dominant_eigenvalues()[0]
        } else {
            shift_rng.random_range(-PI..PI)
        };
        let model = base.rotate_phases(shift)?;
        let dominant = model.dominant_eigenvalues();
        for trial in 0..10 {
            let r = qmegs_int_run(&model, &config, &mut stream_rng(1011 + seed, trial))?;
            if maxmin_error(&r.estimates, &dominant, true)? <= radius {
                hits += 1;
                if seed == 0 {
                    seam_hits += 1;
                }
            }
        }
    }
    Ok(Verdict::new(
        hits >= 45,
        format!("{hits}/50 trials covered within alpha/T on the circle ({seam_hits}/10 for the model straddling the seam)"),
    ))
}

fn sandwich() -> BenchResult<Verdict> {
    let mut passed = true;
    let mut worst_ratio = 0.0_f64;
    for depth in [1.0, 2.0, 5.0, 20.0] {
        let n = 10_000;
        for i in 0..n {
            let x = -2.0 * PI / 3.0 + 4.0 * PI / 3.0 * i as f64 / (n - 1) as f64;
            let g = (-0.5 * x * x * depth * depth).exp();
            let p = periodic_gaussian(x, depth)?;
            passed &= g <= p && p <= 1.01 * g;
            if g > 0.0 {
                worst_ratio = worst_ratio.max(p / g);
            }
        }
        let mut prev = f64::INFINITY;
        for i in 0..n {
            let x = PI * i as f64 / (n - 1) as f64;
            let p = periodic_gaussian(x, depth)?;
            passed &= p <= prev;
            prev = p;
        }
    }
    Ok(Verdict::new(passed, format!("largest phi_p / gaussian ratio {worst_ratio:.6}; monotone on [0, pi]: checked")))
}

fn random_symmetric<R: Rng>(n: usize, rng: &mut R) -> SymMatrix {
    let mut a = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            a.add_symmetric(i, j, rng.random_range(-1.0..1.0));
        }
    }
    a
}

fn eig_residual(a: &SymMatrix) -> BenchResult<f64> {
    let e = sym_eig(a)?;
    let n = a.dim();
    let mut sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            let r: f64 = (0..n).map(|k| e.vector_entry(i, k) * e.values[k] * e.vector_entry(j, k)).sum();
            sq += (r - a.get(i, j)).powi(2);
        }
    }
    Ok(sq.sqrt() / a.frobenius_norm())
}

fn dense_matches(built: &SymMatrix, dense: &oracles::Dense) -> bool {
    built.dim() == dense.len()
        && (0..dense.len()).all(|i| (0..dense.len()).all(|j| (built.get(i, j) - dense[i][j]).abs() < 1e-12))
}

fn linalg_oracles() -> BenchResult<Verdict> {
    let mut rng = stream_rng(1212, 0);
    let mut eig_worst = 0.0_f64;
    for n in [1, 2, 3, 8, 33, 64, 128, 256] {
        eig_worst = eig_worst.max(eig_residual(&random_symmetric(n, &mut rng))?);
    }

    let mut cases: Vec<(ComplexMatrix, usize)> = Vec::new();
    for k in 1..=3 {
        let model = oracles::random_model(&mut rng, 2 + k);
        let samples: Vec<Complex64> = (0..127)
            .map(|t| exact_signal(&model, t as f64) + Complex64::new(rng.random_range(-0.02..0.02), rng.random_range(-0.02..0.02)))
            .collect();
        cases.push((Hankel::new(64, 64, samples)?.to_dense(), k));
    }
    for &(rows, cols, rank) in &[(64, 48, 3), (40, 64, 2), (30, 30, 1)] {
        let x = ComplexMatrix::from_fn(rows, rank, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let y = ComplexMatrix::from_fn(rank, cols, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let mut m = x.matmul(&y)?;
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] += Complex64::new(rng.random_range(-1e-3..1e-3), rng.random_range(-1e-3..1e-3));
            }
        }
        cases.push((m, rank));
    }
    let mut angle_worst = 0.0_f64;
    for (m, r) in &cases {
        let q = top_singular_subspace(m, *r, SubspaceOptions::default())?;
        let (_, u) = oracles::jacobi_svd_left(m);
        angle_worst = angle_worst.max(oracles::subspace_distance(&u[..*r], &q));
    }

    let mut builders = true;
    for l in 2..=3 {
        for g in [0.0, 0.7, 4.0] {
            builders &= dense_matches(&build_tfim(l, g)?, &oracles::tfim_dense(l, g));
        }
        for (t, u) in [(1.0, 0.0), (1.0, 4.0), (0.5, 10.0)] {
            builders &= dense_matches(&build_hubbard(l, t, u)?, &oracles::hubbard_dense(l, t, u));
        }
    }
    Ok(Verdict::new(
        eig_worst <= 1e-8 && angle_worst <= 1e-6 && builders,
        format!(
            "sym_eig relative residual {eig_worst:.2e} (dim <= 256), subspace sin-angle bound {angle_worst:.2e}, builders match: {builders}"
        ),
    ))
}

fn determinism() -> BenchResult<Verdict> {
    let source = ModelSpec::Toy { m: 20, gap: 1e-2, seed: 3 };
    let model = source.build()?.model;
    let config = ExperimentConfig::new(source, Algorithm::ALL.to_vec(), Schedule::new(100.0, 2.0, 2), 3, 7);
    let texts: Vec<String> = [1, 4, 8]
        .iter()
        .map(|&w| run_sweep_with_workers(&config, &model, w).map(|r| to_csv_string(&r)))
        .collect::<BenchResult<_>>()?;
    let same = texts.windows(2).all(|w| w[0] == w[1]);
    Ok(Verdict::new(
        same,
        format!("{} rows; 1/4/8 workers byte-identical: {same}", texts[0].lines().count() - 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        for (i, c) in CRITERIA.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
        }
        assert!(criterion(14).is_none());
    }

    #[test]
    fn slope_of_power_law() {
        let x: Vec<f64> = [1.0_f64, 2.0, 4.0, 8.0].iter().map(|v| v.ln()).collect();
        let y: Vec<f64> = [1.0_f64, 2.0, 4.0, 8.0].iter().map(|v| (3.0 * v.powf(-1.5)).ln()).collect();
        assert!((slope(&x, &y) + 1.5).abs() < 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn outcome_line_format() {
        let o = Outcome {
            id: 3,
            title: "x",
            passed: true,
            elapsed: Duration::from_millis(1500),
            budget: secs(60),
            detail: "ok".into(),
        };
        assert_eq!(o.to_string(), "criterion  3 [PASS] x (1.5 s of 60 s): ok");
    }
}
