//! Loads an experiment from JSON, the same format `qmegs sweep --config` reads.

use qmegs_bench::{run_sweep_with_workers, to_csv_string, ExperimentConfig};

const EXPERIMENT: &str = r#"{
  "model": { "builder": "toy", "m": 20, "gap": 0.05, "seed": 3 },
  "algorithms": ["qmegs", "mmqcels"],
  "schedule": { "base": 100, "factor": 2, "count": 2 },
  "trials": 3,
  "seed": 9,
  "qmegs": { "n": 300, "sigma": 1.0, "alpha": 5.0, "q": 0.05, "k": 2 }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("experiment.json");
    std::fs::write(&path, EXPERIMENT)?;
    let config = ExperimentConfig::load(&path)?;
    println!("depths {:?}, {} trials each", config.schedule.depths(), config.trials);

    let model = config.model.build()?.model;
    // One worker or four: the rows are identical.
    let one = run_sweep_with_workers(&config, &model, 1)?;
    let four = run_sweep_with_workers(&config, &model, 4)?;
    assert_eq!(to_csv_string(&one), to_csv_string(&four));
    print!("{}", to_csv_string(&one));
    Ok(())
}

