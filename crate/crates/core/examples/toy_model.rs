//! Builds the near-degenerate toy spectrum and prints its gap statistics
//! next to the exact signal at a few times.
//!
//! ```bash
//! cargo run -p qmegs --example toy_model
//! ```

use qmegs::spectrum::{build_toy, exact_signal, gap_report};

fn main() -> qmegs::Result<()> {
    let model = build_toy(20, 1e-3, 1)?;
    let gaps = gap_report(&model);
    println!("dominant eigenvalues: {:?}", model.dominant_eigenvalues());
    println!(
        "delta_dom = {:.3e}, delta = {:.3e}, p_min = {}, p_tail = {:.3}",
        gaps.delta_dom, gaps.delta, gaps.p_min, gaps.p_tail
    );
    for t in [0.0, 10.0, 100.0, 1000.0] {
        let z = exact_signal(&model, t);
        println!("Z({t:>6}) = {:+.5} {:+.5}i  |Z| = {:.5}", z.re, z.im, z.norm());
    }
    Ok(())
}
