//! Benchmark harness for the `qmegs` estimators: error-versus-depth sweeps
//! over `T = base·factorⁿ`, CSV records, log-log SVG plots, the numerical
//! acceptance checks and the command-line driver behind the `qmegs` binary.

pub mod checks;
pub mod cli;
pub mod config;
pub mod error;
pub mod metrics;
pub mod plot;
pub mod records;
pub mod sweep;

pub use config::{ExperimentConfig, ModelSpec, Schedule};
pub use error::{BenchError, BenchResult};
pub use metrics::{maxmin_error, single_error, Metric};
pub use plot::{emit_plot, render_svg, Axis};
pub use records::{emit_csv, read_csv, to_csv_string, SweepRecord};
pub use sweep::{run_sweep, run_sweep_with_workers};
