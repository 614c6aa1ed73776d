use rayon::prelude::*;

use qmegs::baselines::{esprit_run, mmqcels_run, qpe_run, EspritConfig, QcelsConfig, QpeConfig};
use qmegs::{qmegs_int_run, qmegs_run, stream_rng, Algorithm, EstimateResult, SpectralModel};

use crate::config::ExperimentConfig;
use crate::error::{BenchError, BenchResult};
use crate::metrics::{maxmin_error, single_error, Metric};
use crate::records::SweepRecord;

fn algorithm_index(a: Algorithm) -> u64 {
    Algorithm::ALL.iter().position(|&x| x == a).unwrap_or(0) as u64
}

/// RNG stream of one trial. It depends only on the algorithm, the position
/// of `T` in the schedule and the trial index, so worker count and the
/// selection of other algorithms cannot change it.
pub fn trial_stream(algorithm: Algorithm, depth_index: usize, trial: usize) -> u64 {
    (algorithm_index(algorithm) << 48) | ((depth_index as u64) << 32) | trial as u64
}

pub fn metric_for(algorithm: Algorithm) -> Metric {
    match algorithm {
        Algorithm::Qpe => Metric::Single,
        _ => Metric::Maxmin,
    }
}

fn estimate(model: &SpectralModel, algorithm: Algorithm, depth: f64, config: &ExperimentConfig, seed: u64) -> qmegs::Result<EstimateResult> {
    let mut rng = stream_rng(config.seed, seed);
    let k = config.qmegs.k;
    match algorithm {
        Algorithm::Qmegs => qmegs_run(model, &config.qmegs.at_depth(depth), &mut rng),
        Algorithm::QmegsInt => qmegs_int_run(model, &config.qmegs.at_depth(depth), &mut rng),
        Algorithm::Esprit => esprit_run(model, &EspritConfig::new(depth, k), &mut rng),
        Algorithm::Qpe => {
            let p = model.overlaps()[model.dominant()[0]];
            qpe_run(model, &QpeConfig::for_overlap(QpeConfig::depth_for(depth), p), &mut rng)
        }
        Algorithm::MmQcels => mmqcels_run(model, &QcelsConfig::for_target(depth, k), &mut rng),
    }
}

/// Runs one trial and turns the outcome, success or failure, into a row.
pub fn run_trial(
    model: &SpectralModel,
    algorithm: Algorithm,
    depth_index: usize,
    depth: f64,
    trial: usize,
    config: &ExperimentConfig,
) -> SweepRecord {
    let metric = metric_for(algorithm);
    let wrapped = algorithm == Algorithm::QmegsInt;
    let outcome = estimate(model, algorithm, depth, config, trial_stream(algorithm, depth_index, trial)).and_then(|r| {
        let dominant = model.dominant_eigenvalues();
        let error = match metric {
            Metric::Maxmin => maxmin_error(&r.estimates, &dominant, wrapped)?,
            Metric::Single => single_error(r.estimates[0], dominant[0], wrapped),
        };
        Ok((r, error))
    });
    match outcome {
        Ok((r, error)) => SweepRecord {
            algorithm,
            depth,
            trial,
            error,
            t_max: r.t_max,
            t_total: r.t_total,
            metric,
            tag: r.degraded.then(|| "degraded".to_string()),
        },
        Err(e) => SweepRecord {
            algorithm,
            depth,
            trial,
            error: f64::NAN,
            t_max: f64::NAN,
            t_total: f64::NAN,
            metric,
            tag: Some(e.kind().to_string()),
        },
    }
}

/// Every (algorithm, T, trial) of `config` on the current rayon pool,
/// sorted by algorithm, `T` and trial.
pub fn run_sweep(config: &ExperimentConfig, model: &SpectralModel) -> BenchResult<Vec<SweepRecord>> {
    config.validate()?;
    let depths = config.schedule.depths();
    let mut jobs = Vec::new();
    for &algorithm in &config.algorithms {
        for (i, &depth) in depths.iter().enumerate() {
            if algorithm == Algorithm::Esprit && depth > config.esprit_max_depth {
                continue;
            }
            jobs.extend((0..config.trials).map(|trial| (algorithm, i, depth, trial)));
        }
    }
    let mut records: Vec<SweepRecord> = jobs
        .into_par_iter()
        .map(|(algorithm, i, depth, trial)| run_trial(model, algorithm, i, depth, trial, config))
        .collect();
    records.sort_by(|a, b| {
        algorithm_index(a.algorithm)
            .cmp(&algorithm_index(b.algorithm))
            .then(a.depth.total_cmp(&b.depth))
            .then(a.trial.cmp(&b.trial))
    });
    records.dedup_by(|a, b| a.algorithm == b.algorithm && a.depth == b.depth && a.trial == b.trial);
    Ok(records)
}

/// [`run_sweep`] on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(config: &ExperimentConfig, model: &SpectralModel, workers: usize) -> BenchResult<Vec<SweepRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    pool.install(|| run_sweep(config, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ModelSpec, Schedule};

    fn small() -> (ExperimentConfig, SpectralModel) {
        let source = ModelSpec::Toy { m: 10, gap: 0.1, seed: 2 };
        let model = source.build().unwrap().model;
        let mut cfg = ExperimentConfig::new(source, vec![Algorithm::Qmegs], Schedule::new(100.0, 2.0, 3), 2, 5);
        cfg.qmegs.n = 50;
        (cfg, model)
    }

    #[test]
    fn cardinality_and_order() {
        let (cfg, model) = small();
        let r = run_sweep(&cfg, &model).unwrap();
        assert_eq!(r.len(), 6);
        let keys: Vec<(f64, usize)> = r.iter().map(|x| (x.depth, x.trial)).collect();
        assert_eq!(keys, vec![(200.0, 0), (200.0, 1), (400.0, 0), (400.0, 1), (800.0, 0), (800.0, 1)]);
        for x in &r {
            assert!(x.error >= 0.0);
            assert!(x.t_max <= x.t_total);
            assert!(x.t_max <= cfg.qmegs.sigma * x.depth + 1e-9);
            assert!(x.t_total <= cfg.qmegs.n as f64 * cfg.qmegs.sigma * x.depth + 1e-9);
        }
    }

    #[test]
    fn streams_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for &a in &Algorithm::ALL {
            for i in 0..8 {
                for t in 0..50 {
                    assert!(seen.insert(trial_stream(a, i, t)));
                }
            }
        }
    }

    #[test]
    fn failures_become_tagged_nan_rows() {
        let (mut cfg, model) = small();
        cfg.qmegs.alpha = 50.0;
        cfg.qmegs.k = 40;
        cfg.trials = 1;
        cfg.schedule.count = 1;
        let r = run_sweep(&cfg, &model).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].error.is_nan());
        assert_eq!(r[0].tag.as_deref(), Some("exhausted"));
    }

    #[test]
    fn esprit_cost_bookkeeping() {
        let (mut cfg, model) = small();
        cfg.algorithms = vec![Algorithm::Esprit];
        cfg.schedule = Schedule::new(100.0, 2.0, 1);
        let r = run_sweep(&cfg, &model).unwrap();
        for x in &r {
            assert_eq!(x.t_total, 199.0 * 200.0 / 2.0);
        }
    }
}
