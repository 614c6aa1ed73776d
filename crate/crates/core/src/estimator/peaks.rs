use std::f64::consts::PI;

use super::filter::FilterGrid;
use crate::error::{Error, Result};

/// `α/q`, snapped to the nearest integer when it is one up to rounding so
/// that grid points exactly `α/T` away from a peak stay eligible.
fn block_ratio(alpha: f64, q: f64) -> f64 {
    let r = alpha / q;
    let nearest = r.round();
    if (r - nearest).abs() <= 1e-9 * r.max(1.0) {
        nearest
    } else {
        r
    }
}

/// Blocked iterative argmax over the grid.
///
/// Each round takes the largest value outside the open intervals
/// `(θ_k − α/T, θ_k + α/T)` of earlier picks; ties go to the lowest index.
/// With `wrap` the intervals live on the circle and may cross `±π`.
pub fn peak_search(grid: &FilterGrid, k: usize, alpha: f64, wrap: bool) -> Result<Vec<f64>> {
    Ok(peak_indices(grid, k, alpha, wrap)?
        .into_iter()
        .map(|j| grid.theta(j))
        .collect())
}

/// Grid indices picked by [`peak_search`], in pick order.
pub fn peak_indices(grid: &FilterGrid, k: usize, alpha: f64, wrap: bool) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::invalid("peak count K must be at least 1"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!("block constant must be positive, got {alpha}")));
    }
    let radius = block_ratio(alpha, grid.q());
    let period = 2.0 * PI * grid.depth() / grid.q();
    let blocked = |j: usize, peak: usize| -> bool {
        let d = j.abs_diff(peak) as f64;
        d < radius || (wrap && period - d < radius)
    };

    let values = grid.values();
    let mut picks: Vec<usize> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for (j, &v) in values.iter().enumerate() {
            if picks.iter().any(|&p| blocked(j, p)) {
                continue;
            }
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((j, v));
            }
        }
        match best {
            Some((j, _)) => picks.push(j),
            None => {
                return Err(Error::Exhausted { found: picks.len(), requested: k });
            }
        }
    }
    Ok(picks)
}
