//! Parameters picked from model statistics in each regime for a target
//! accuracy, including the warnings raised along the way.
//!
//! ```bash
//! cargo run -p qmegs --example theorem_params
//! ```

use qmegs::estimator::{theorem_params, ParamConstants, Regime};
use qmegs::spectrum::{build_toy, gap_report};

fn main() -> qmegs::Result<()> {
    let model = build_toy(20, 0.05, 9)?;
    let stats = gap_report(&model);
    let k = model.dominant().len();
    for regime in [Regime::General, Regime::GappedDominant, Regime::GappedTail] {
        let p = theorem_params(regime, &stats, k, 1e-3, 0.05, &ParamConstants::default())?;
        let c = p.config;
        println!(
            "{regime:?}: N = {}, T = {:.1}, sigma = {:.3}, alpha = {:.3}, q = {:.4}",
            c.n, c.depth, c.sigma, c.alpha, c.q
        );
        for w in &p.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
