use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use qmegs::io::{read_model, ModelFile, Provenance};
use qmegs::spectrum::{build_hubbard, build_tfim, build_toy, model_from_hamiltonian};
use qmegs::{Algorithm, QmegsConfig};

use crate::error::{BenchError, BenchResult};

/// Overlaps placed on the two lowest eigenvalues of the lattice models.
pub const DOMINANT_WEIGHTS: [f64; 2] = [0.4, 0.4];

/// How the spectral model of an experiment is obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "lowercase")]
pub enum ModelSpec {
    Toy { m: usize, gap: f64, seed: u64 },
    Tfim { sites: usize, g: f64, seed: u64 },
    Hubbard { sites: usize, hopping: f64, interaction: f64, seed: u64 },
    File { path: PathBuf },
}

impl ModelSpec {
    pub fn build(&self) -> BenchResult<ModelFile> {
        let (model, provenance) = match self {
            ModelSpec::Toy { m, gap, seed } => (
                build_toy(*m, *gap, *seed)?,
                provenance("toy", json!({ "M": m, "gap": gap }), *seed),
            ),
            ModelSpec::Tfim { sites, g, seed } => (
                model_from_hamiltonian(&build_tfim(*sites, *g)?, &DOMINANT_WEIGHTS, *seed)?,
                provenance("tfim", json!({ "L": sites, "g": g }), *seed),
            ),
            ModelSpec::Hubbard { sites, hopping, interaction, seed } => (
                model_from_hamiltonian(&build_hubbard(*sites, *hopping, *interaction)?, &DOMINANT_WEIGHTS, *seed)?,
                provenance("hubbard", json!({ "L": sites, "t": hopping, "U": interaction }), *seed),
            ),
            ModelSpec::File { path } => return Ok(read_model(path)?),
        };
        Ok(ModelFile { model, provenance })
    }
}

fn provenance(builder: &str, parameters: serde_json::Value, seed: u64) -> Provenance {
    Provenance { builder: builder.into(), parameters, seed: Some(seed) }
}

/// Depths `base·factorⁿ` for `n = first, …, first + count − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub base: f64,
    pub factor: f64,
    pub count: usize,
    #[serde(default = "one")]
    pub first: u32,
}

fn one() -> u32 {
    1
}

impl Schedule {
    pub fn new(base: f64, factor: f64, count: usize) -> Self {
        Self { base, factor, count, first: 1 }
    }

    pub fn depths(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| self.base * self.factor.powi((self.first as usize + i) as i32))
            .collect()
    }
}

/// Estimator constants shared by the QMEGS variants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QmegsDefaults {
    pub n: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub q: f64,
    pub k: usize,
}

impl Default for QmegsDefaults {
    fn default() -> Self {
        let s = QmegsConfig::standard(1.0);
        Self { n: s.n, sigma: s.sigma, alpha: s.alpha, q: s.q, k: s.k }
    }
}

impl QmegsDefaults {
    pub fn at_depth(&self, depth: f64) -> QmegsConfig {
        QmegsConfig { n: self.n, depth, sigma: self.sigma, alpha: self.alpha, q: self.q, k: self.k }
    }
}

fn default_trials() -> usize {
    20
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_esprit_cap() -> f64 {
    3200.0
}

/// One error-versus-depth comparison. Every field can be given in a JSON
/// file and overridden from the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub algorithms: Vec<Algorithm>,
    pub schedule: Schedule,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// ESPRIT is skipped above this depth; its cost grows quadratically.
    #[serde(default = "default_esprit_cap")]
    pub esprit_max_depth: f64,
    #[serde(default)]
    pub qmegs: QmegsDefaults,
}

impl ExperimentConfig {
    pub fn new(model: ModelSpec, algorithms: Vec<Algorithm>, schedule: Schedule, trials: usize, seed: u64) -> Self {
        Self {
            model,
            algorithms,
            schedule,
            trials,
            seed,
            output: default_output(),
            esprit_max_depth: default_esprit_cap(),
            qmegs: QmegsDefaults::default(),
        }
    }

    pub fn load(path: &Path) -> BenchResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| BenchError::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> BenchResult<()> {
        let s = &self.schedule;
        if s.count == 0 {
            return Err(BenchError::Config("the depth schedule is empty".into()));
        }
        if !(s.base > 0.0 && s.factor > 0.0 && s.base.is_finite() && s.factor.is_finite()) {
            return Err(BenchError::Config(format!(
                "schedule base and factor must be positive, got {} and {}",
                s.base, s.factor
            )));
        }
        if self.trials == 0 {
            return Err(BenchError::Config("at least one trial per point is required".into()));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config("no algorithms selected".into()));
        }
        self.qmegs.at_depth(s.depths()[0]).validate()?;
        Ok(())
    }

    /// Depths actually run for `algorithm` after the ESPRIT cap.
    pub fn depths_for(&self, algorithm: Algorithm) -> Vec<f64> {
        self.schedule
            .depths()
            .into_iter()
            .filter(|&t| algorithm != Algorithm::Esprit || t <= self.esprit_max_depth)
            .collect()
    }
}
