//! Textbook phase estimation: outcome distribution and sampled estimates of
//! the lowest dominant eigenvalue as the register grows.
//!
//! ```bash
//! cargo run -p qmegs --example phase_estimation
//! ```

use std::f64::consts::PI;

use qmegs::baselines::{qpe_distribution, qpe_run, QpeConfig};
use qmegs::spectrum::build_toy;
use qmegs::stream_rng;

fn main() -> qmegs::Result<()> {
    let model = build_toy(20, 0.1, 2)?;
    let lowest = model.dominant_eigenvalues()[0];
    let probs = qpe_distribution(&model, 6)?;
    let (mode, p) = probs.iter().enumerate().fold((0, 0.0), |a, (i, &p)| if p > a.1 { (i, p) } else { a });
    println!("d = 6: most likely k = {}, probability {p:.3}", mode as i64 - 32);

    for d in 6..=12 {
        let config = QpeConfig::for_overlap(d, 0.4);
        let r = qpe_run(&model, &config, &mut stream_rng(1, d as u64))?;
        let step = 2.0 * PI / (1u64 << d) as f64;
        println!(
            "d = {d:>2}: estimate {:+.6} error {:.2e} (bin {step:.1e}), T_total = {}",
            r.estimates[0],
            (r.estimates[0] - lowest).abs(),
            r.t_total
        );
    }
    Ok(())
}
