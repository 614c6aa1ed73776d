//! A small TFIM sweep written as CSV plus both plots, then read back.
//!
//! `cargo run --example sweep_to_csv -p qmegs-bench [out-dir]`

use qmegs::Algorithm;
use qmegs_bench::{emit_csv, emit_plot, read_csv, run_sweep, Axis, ExperimentConfig, ModelSpec, Schedule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweep-example".into());
    let config = ExperimentConfig::new(
        ModelSpec::Tfim { sites: 6, g: 4.0, seed: 1 },
        vec![Algorithm::Qmegs, Algorithm::Esprit, Algorithm::Qpe],
        Schedule::new(100.0, 2.0, 3),
        5,
        42,
    );
    let model = config.model.build()?.model;
    let records = run_sweep(&config, &model)?;

    std::fs::create_dir_all(&out)?;
    let dir = std::path::Path::new(&out);
    emit_csv(&records, &dir.join("sweep.csv"))?;
    emit_plot(&records, Axis::Tmax, &dir.join("error_tmax.svg"))?;
    emit_plot(&records, Axis::Ttotal, &dir.join("error_ttotal.svg"))?;

    let back = read_csv(&dir.join("sweep.csv"))?;
    assert_eq!(back, records);
    for r in records.iter().filter(|r| r.trial == 0) {
        println!("{:<9} T={:<5} error {:.3e}  T_max {:.0}  T_total {:.3e}", r.algorithm.as_str(), r.depth, r.error, r.t_max, r.t_total);
    }
    println!("{} rows in {}", back.len(), dir.display());
    Ok(())
}
