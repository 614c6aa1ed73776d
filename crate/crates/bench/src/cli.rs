//! Command-line driver: `model`, `run`, `sweep` and `check`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmegs::baselines::{esprit_run, mmqcels_run, qpe_run, EspritConfig, QcelsConfig, QpeConfig};
use qmegs::estimator::qmegs_search;
use qmegs::io::{write_dataset, write_grid_csv, write_model, ModelFile};
use qmegs::sampler::{generate_dataset, generate_integer_dataset};
use qmegs::{stream_rng, Algorithm, EstimateResult};

use crate::checks::{criterion, CRITERIA};
use crate::config::{ExperimentConfig, ModelSpec, QmegsDefaults, Schedule};
use crate::error::{BenchError, BenchResult};
use crate::metrics::{maxmin_error, single_error};
use crate::plot::{emit_plot, Axis};
use crate::records::emit_csv;
use crate::sweep::{metric_for, run_sweep_with_workers};

#[derive(Debug, Parser)]
#[command(name = "qmegs", version, about = "Multiple-eigenvalue estimation from Hadamard-test data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a spectral model and write it as JSON.
    Model(ModelCmd),
    /// Run one estimator once and print its result.
    Run(RunCmd),
    /// Error-versus-depth comparison: CSV plus two SVG plots.
    Sweep(SweepCmd),
    /// Run the numerical acceptance checks.
    Check(CheckCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Toy,
    Tfim,
    Hubbard,
}

#[derive(Debug, Args)]
pub struct BuilderArgs {
    /// Toy-model dimension.
    #[arg(long = "M", default_value_t = 20)]
    pub m: usize,
    /// Toy-model dominant gap.
    #[arg(long, default_value_t = 1e-3)]
    pub gap: f64,
    /// Lattice sites.
    #[arg(long = "L", default_value_t = 8)]
    pub sites: usize,
    /// Transverse field.
    #[arg(long, default_value_t = 4.0)]
    pub g: f64,
    /// Hubbard hopping.
    #[arg(long = "t", default_value_t = 1.0)]
    pub hopping: f64,
    /// Hubbard interaction.
    #[arg(long = "U", default_value_t = 10.0)]
    pub interaction: f64,
}

impl BuilderArgs {
    fn model_spec(&self, builder: Builder, seed: u64) -> ModelSpec {
        match builder {
            Builder::Toy => ModelSpec::Toy { m: self.m, gap: self.gap, seed },
            Builder::Tfim => ModelSpec::Tfim { sites: self.sites, g: self.g, seed },
            Builder::Hubbard => ModelSpec::Hubbard {
                sites: self.sites,
                hopping: self.hopping,
                interaction: self.interaction,
                seed,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelCmd {
    #[arg(long, value_enum)]
    pub builder: Builder,
    #[command(flatten)]
    pub params: BuilderArgs,
    /// Seed of the random parts of the model (eigenvalues, tail overlaps).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "model.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunCmd {
    #[arg(long, value_parser = clap::value_parser!(Algorithm))]
    pub algo: Algorithm,
    /// Read the model from a file instead of building it.
    #[arg(long, conflicts_with = "builder")]
    pub model_file: Option<PathBuf>,
    #[arg(long = "builder", alias = "model", value_enum, default_value = "toy")]
    pub builder: Builder,
    #[command(flatten)]
    pub params: BuilderArgs,
    #[arg(long, default_value_t = 1)]
    pub model_seed: u64,
    /// Depth parameter T.
    #[arg(long = "T", default_value_t = 800.0)]
    pub depth: f64,
    /// Master seed of the measurement randomness.
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Write the filter grid as `theta,G` CSV (QMEGS variants only).
    #[arg(long)]
    pub grid_out: Option<PathBuf>,
    /// Write the generated shots (QMEGS variants only).
    #[arg(long)]
    pub data_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    /// JSON experiment file; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "model", value_enum)]
    pub builder: Option<Builder>,
    #[arg(long, conflicts_with = "builder")]
    pub model_file: Option<PathBuf>,
    #[command(flatten)]
    pub params: BuilderArgs,
    #[arg(long, default_value_t = 1)]
    pub model_seed: u64,
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(Algorithm))]
    pub algos: Option<Vec<Algorithm>>,
    #[arg(long)]
    pub base: Option<f64>,
    #[arg(long)]
    pub factor: Option<f64>,
    /// Largest exponent n in T = base·factorⁿ.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed; every trial derives its own stream from it.
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckCmd {
    /// Comma-separated criterion numbers; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status: 0 on success, 1 on failure, 2 on usage errors.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn execute(command: Command) -> BenchResult<i32> {
    match command {
        Command::Model(cmd) => model(cmd),
        Command::Run(cmd) => run(cmd),
        Command::Sweep(cmd) => sweep(cmd),
        Command::Check(cmd) => check(cmd),
    }
}

fn model(cmd: ModelCmd) -> BenchResult<i32> {
    let file = cmd.params.model_spec(cmd.builder, cmd.seed).build()?;
    write_model(&cmd.out, &file)?;
    println!(
        "wrote {} ({} eigenvalues, dominant {:?})",
        cmd.out.display(),
        file.model.len(),
        file.model.dominant_eigenvalues()
    );
    Ok(0)
}

fn load_model(file: &Option<PathBuf>, builder: Builder, params: &BuilderArgs, seed: u64) -> BenchResult<ModelFile> {
    match file {
        Some(path) => ModelSpec::File { path: path.clone() }.build(),
        None => params.model_spec(builder, seed).build(),
    }
}

fn run(cmd: RunCmd) -> BenchResult<i32> {
    let file = load_model(&cmd.model_file, cmd.builder, &cmd.params, cmd.model_seed)?;
    let model = &file.model;
    let mut params = QmegsDefaults::default();
    if cmd.algo == Algorithm::QmegsInt {
        params.sigma = 3.0;
    }
    params.n = cmd.n.unwrap_or(params.n);
    params.sigma = cmd.sigma.unwrap_or(params.sigma);
    params.alpha = cmd.alpha.unwrap_or(params.alpha);
    params.q = cmd.q.unwrap_or(params.q);
    params.k = cmd.k.unwrap_or(params.k);
    let mut rng = stream_rng(cmd.seed, 0);

    let result: EstimateResult = match cmd.algo {
        Algorithm::Qmegs | Algorithm::QmegsInt => {
            let config = params.at_depth(cmd.depth);
            config.validate()?;
            let data = if cmd.algo == Algorithm::Qmegs {
                generate_dataset(model, config.n, config.depth, config.sigma, &mut rng)?
            } else {
                generate_integer_dataset(model, config.n, config.depth, config.sigma, &mut rng)?
            };
            let (estimates, grid) = qmegs_search(&data, &config)?;
            if let Some(path) = &cmd.grid_out {
                write_grid_csv(path, &grid)?;
            }
            if let Some(path) = &cmd.data_out {
                write_dataset(path, &data)?;
            }
            let (t_max, t_total) = data.cost();
            EstimateResult {
                algorithm: cmd.algo,
                estimates,
                t_max,
                t_total,
                degraded: false,
                config: serde_json::to_value(config).unwrap_or_default(),
            }
        }
        Algorithm::Esprit => esprit_run(model, &EspritConfig::new(cmd.depth, params.k), &mut rng)?,
        Algorithm::Qpe => {
            let p = model.overlaps()[model.dominant()[0]];
            qpe_run(model, &QpeConfig::for_overlap(QpeConfig::depth_for(cmd.depth), p), &mut rng)?
        }
        Algorithm::MmQcels => mmqcels_run(model, &QcelsConfig::for_target(cmd.depth, params.k), &mut rng)?,
    };
    if cmd.grid_out.is_some() && !matches!(cmd.algo, Algorithm::Qmegs | Algorithm::QmegsInt) {
        eprintln!("warning: --grid-out only applies to qmegs and qmegs-int");
    }

    let dominant = model.dominant_eigenvalues();
    let wrapped = cmd.algo == Algorithm::QmegsInt;
    let metric = metric_for(cmd.algo);
    let error = match metric {
        crate::metrics::Metric::Maxmin => maxmin_error(&result.estimates, &dominant, wrapped)?,
        crate::metrics::Metric::Single => single_error(result.estimates[0], dominant[0], wrapped),
    };
    let report = json!({
        "result": result,
        "dominant": dominant,
        "error": error,
        "metric": metric.as_str(),
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap_or_default());
    Ok(0)
}

fn sweep_config(cmd: &SweepCmd) -> BenchResult<ExperimentConfig> {
    let mut config = match &cmd.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => {
            let builder = cmd.builder.unwrap_or(Builder::Toy);
            ExperimentConfig::new(
                cmd.params.model_spec(builder, cmd.model_seed),
                vec![Algorithm::Qmegs, Algorithm::Esprit, Algorithm::Qpe, Algorithm::MmQcels],
                Schedule::new(100.0, 2.0, 7),
                20,
                cmd.seed,
            )
        }
    };
    if let Some(path) = &cmd.model_file {
        config.model = ModelSpec::File { path: path.clone() };
    } else if let (Some(builder), Some(_)) = (cmd.builder, &cmd.config) {
        config.model = cmd.params.model_spec(builder, cmd.model_seed);
    }
    if let Some(a) = &cmd.algos {
        config.algorithms = a.clone();
    }
    if let Some(b) = cmd.base {
        config.schedule.base = b;
    }
    if let Some(f) = cmd.factor {
        config.schedule.factor = f;
    }
    if let Some(n) = cmd.n_max {
        let first = config.schedule.first as usize;
        config.schedule.count = (n + 1).saturating_sub(first);
    }
    if let Some(t) = cmd.trials {
        config.trials = t;
    }
    if let Some(out) = &cmd.out {
        config.output = out.clone();
    }
    config.seed = cmd.seed;
    config.validate()?;
    Ok(config)
}

fn write_json(path: &Path, value: &serde_json::Value) -> BenchResult<()> {
    let text = serde_json::to_string_pretty(value).unwrap_or_default() + "\n";
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

fn sweep(cmd: SweepCmd) -> BenchResult<i32> {
    let config = sweep_config(&cmd)?;
    let file = config.model.build()?;
    let workers = cmd.workers.unwrap_or_else(rayon::current_num_threads);
    let records = run_sweep_with_workers(&config, &file.model, workers)?;

    let out = &config.output;
    fs::create_dir_all(out).map_err(|e| BenchError::io(out, e))?;
    let csv = out.join("sweep.csv");
    emit_csv(&records, &csv)?;
    emit_plot(&records, Axis::Tmax, &out.join("error_tmax.svg"))?;
    emit_plot(&records, Axis::Ttotal, &out.join("error_ttotal.svg"))?;

    let depths: serde_json::Map<String, serde_json::Value> = config
        .algorithms
        .iter()
        .map(|&a| (a.to_string(), json!(config.depths_for(a))))
        .collect();
    let failed = records.iter().filter(|r| r.failed()).count();
    write_json(
        &out.join("sweep.json"),
        &json!({
            "config": config,
            "model": file.provenance,
            "depths": depths,
            "esprit_cap": format!("ESPRIT runs only up to T = {}", config.esprit_max_depth),
            "records": records.len(),
            "failed": failed,
        }),
    )?;
    println!(
        "{} records ({failed} failed) written to {}; plots error_tmax.svg, error_ttotal.svg",
        records.len(),
        csv.display()
    );
    Ok(0)
}

fn check(cmd: CheckCmd) -> BenchResult<i32> {
    let ids: Vec<u8> = cmd.only.unwrap_or_else(|| CRITERIA.iter().map(|c| c.id).collect());
    let mut all = true;
    for id in ids {
        let c = criterion(id).ok_or_else(|| BenchError::Config(format!("no criterion {id}; valid: 1-{}", CRITERIA.len())))?;
        let outcome = c.run();
        println!("{outcome}");
        all &= outcome.passed;
    }
    Ok(if all { 0 } else { 1 })
}
