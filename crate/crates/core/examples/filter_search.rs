//! Generates Hadamard-test data, evaluates the filter on the full grid and
//! runs the blocked peak search. The grid is written next to the run as CSV.
//!
//! ```bash
//! cargo run -p qmegs --example filter_search -- /tmp/grid.csv
//! ```

use std::path::PathBuf;

use qmegs::estimator::qmegs_search;
use qmegs::io::write_grid_csv;
use qmegs::sampler::generate_dataset;
use qmegs::spectrum::build_toy;
use qmegs::{stream_rng, QmegsConfig};

fn main() -> qmegs::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    let model = build_toy(20, 0.05, 3)?;
    let config = QmegsConfig::standard(800.0);
    let mut rng = stream_rng(42, 0);
    let data = generate_dataset(&model, config.n, config.depth, config.sigma, &mut rng)?;
    let (estimates, grid) = qmegs_search(&data, &config)?;

    let (t_max, t_total) = data.cost();
    println!("{} grid points, T_max = {t_max:.1}, T_total = {t_total:.1}", grid.len());
    for (e, l) in estimates.iter().zip(model.dominant_eigenvalues()) {
        println!("estimate {e:+.6}   nearest truth {l:+.6}");
    }
    if let Some(path) = out {
        write_grid_csv(&path, &grid)?;
        println!("grid written to {}", path.display());
    }
    Ok(())
}
