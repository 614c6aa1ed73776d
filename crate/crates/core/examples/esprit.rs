//! ESPRIT on noiseless and shot-noise Hankel data.
//!
//! ```bash
//! cargo run -p qmegs --example esprit
//! ```

use qmegs::baselines::{esprit_from_signal, esprit_run, EspritConfig};
use qmegs::spectrum::{build_toy, exact_signal};
use qmegs::{stream_rng, SpectralModel};

fn main() -> qmegs::Result<()> {
    let clean = SpectralModel::new(vec![-0.7, 0.2, 0.31], vec![0.45, 0.35, 0.2], vec![0, 1])?;
    let samples: Vec<_> = (0..42).map(|t| exact_signal(&clean, t as f64)).collect();
    println!("noiseless: {:?}", esprit_from_signal(&samples, 3)?);

    let model = build_toy(20, 0.2, 4)?;
    println!("truth:     {:?}", model.dominant_eigenvalues());
    for depth in [200.0, 800.0, 3200.0] {
        let r = esprit_run(&model, &EspritConfig::new(depth, 2), &mut stream_rng(5, depth as u64))?;
        println!("T = {depth:>6}: {:?}  T_total = {:.3e}", r.estimates, r.t_total);
    }
    Ok(())
}
