//! File formats: JSON model files, whitespace-separated dataset dumps and
//! filter-grid CSV.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::FilterGrid;
use crate::sampler::{Dataset, Shot, TimeMode};
use crate::spectrum::SpectralModel;

/// How a model was built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub builder: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(flatten)]
    pub model: SpectralModel,
    pub provenance: Provenance,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), message: message.into() }
}

pub fn write_model(path: &Path, file: &ModelFile) -> Result<()> {
    let text = serde_json::to_string_pretty(file).map_err(|e| parse_err(path, e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

/// Reads a model file; the model invariants are re-checked on load.
pub fn read_model(path: &Path) -> Result<ModelFile> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))
}

fn mode_name(mode: TimeMode) -> &'static str {
    match mode {
        TimeMode::Real => "real",
        TimeMode::Integer => "integer",
    }
}

/// Header line `# T=<T> sigma=<σ> mode=<real|integer>` followed by one
/// `t re im` line per shot.
pub fn write_dataset(path: &Path, dataset: &Dataset) -> Result<()> {
    let mut out = format!(
        "# T={} sigma={} mode={}\n",
        dataset.depth,
        dataset.sigma,
        mode_name(dataset.mode)
    );
    for s in &dataset.shots {
        out.push_str(&format!("{} {} {}\n", s.t, s.z.re, s.z.im));
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| parse_err(path, "missing '#' header line"))?;
    let (mut depth, mut sigma, mut mode) = (None, None, None);
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(path, format!("bad header field '{field}'")))?;
        match key {
            "T" => depth = value.parse::<f64>().ok(),
            "sigma" => sigma = value.parse::<f64>().ok(),
            "mode" => {
                mode = match value {
                    "real" => Some(TimeMode::Real),
                    "integer" => Some(TimeMode::Integer),
                    _ => None,
                }
            }
            _ => return Err(parse_err(path, format!("unknown header key '{key}'"))),
        }
    }
    let (depth, sigma, mode) = match (depth, sigma, mode) {
        (Some(d), Some(s), Some(m)) => (d, s, m),
        _ => return Err(parse_err(path, "header needs T, sigma and mode")),
    };
    let mut shots = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(path, format!("line {}: {e}", lineno + 2)))?;
        if cols.len() != 3 {
            return Err(parse_err(path, format!("line {}: expected 3 columns", lineno + 2)));
        }
        shots.push(Shot { t: cols[0], z: Complex64::new(cols[1], cols[2]) });
    }
    Ok(Dataset { shots, depth, sigma, mode })
}

/// `theta,G` rows for every grid point.
pub fn write_grid_csv(path: &Path, grid: &FilterGrid) -> Result<()> {
    let mut out = String::from("theta,G\n");
    for (j, g) in grid.values().iter().enumerate() {
        out.push_str(&format!("{},{}\n", grid.theta(j), g));
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}
