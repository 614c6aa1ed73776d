//! Integer-power sampling: a dominant phase right next to the ±π seam is
//! still found because blocking and errors are measured on the circle.
//!
//! ```bash
//! cargo run -p qmegs --example integer_power
//! ```

use std::f64::consts::PI;

use qmegs::estimator::wrapped_distance;
use qmegs::sampler::IntegerTimeTable;
use qmegs::{qmegs_int_run, stream_rng, QmegsConfig, SpectralModel};

fn main() -> qmegs::Result<()> {
    let table = IntegerTimeTable::new(400.0, 3.0)?;
    println!("power support |k| <= {}, P(0) = {:.4}", table.support(), table.probability(0));

    let model = SpectralModel::new(vec![-2.0, 0.5, 1.7], vec![0.15, 0.7, 0.15], vec![1])?
        .rotate_phases(PI - 0.5 - 4e-4)?;
    let truth = model.dominant_eigenvalues()[0];
    let mut config = QmegsConfig::standard(400.0);
    config.sigma = 3.0;
    config.k = 1;
    for trial in 0..5 {
        let r = qmegs_int_run(&model, &config, &mut stream_rng(8, trial))?;
        let err = wrapped_distance(r.estimates[0], truth);
        println!("trial {trial}: truth {truth:+.5} estimate {:+.5} wrapped error {err:.2e}", r.estimates[0]);
    }
    Ok(())
}
