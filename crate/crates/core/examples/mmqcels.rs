//! Multi-level QCELS fitting on a well-separated pair and on the
//! near-degenerate toy pair.
//!
//! ```bash
//! cargo run -p qmegs --example mmqcels
//! ```

use qmegs::baselines::{mmqcels_run, QcelsConfig};
use qmegs::spectrum::build_toy;
use qmegs::stream_rng;

fn main() -> qmegs::Result<()> {
    for gap in [0.2, 1e-3] {
        let model = build_toy(20, gap, 6)?;
        println!("gap {gap}: truth {:?}", model.dominant_eigenvalues());
        for target in [400.0, 3200.0] {
            let config = QcelsConfig::for_target(target, 2);
            let r = mmqcels_run(&model, &config, &mut stream_rng(2, target as u64))?;
            println!(
                "  T = {target:>6} ({} levels): {:?}{}",
                config.levels,
                r.estimates,
                if r.degraded { "  [degraded]" } else { "" }
            );
        }
    }
    Ok(())
}
