use serde::{Deserialize, Serialize};

use qmegs::estimator::wrapped_distance;
use qmegs::Error;

/// Which error a sweep row carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Worst dominant eigenvalue's distance to its nearest estimate.
    Maxmin,
    /// Distance of a single estimate to the lowest dominant eigenvalue.
    Single,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Maxmin => "maxmin",
            Metric::Single => "single",
        }
    }
}

fn distance(a: f64, b: f64, wrapped: bool) -> f64 {
    if wrapped {
        wrapped_distance(a, b)
    } else {
        (a - b).abs()
    }
}

/// `max_m min_k |θ_k − λ_m|` over the dominant eigenvalues, with distances
/// measured on the circle when `wrapped`.
pub fn maxmin_error(estimates: &[f64], dominant: &[f64], wrapped: bool) -> qmegs::Result<f64> {
    if estimates.is_empty() {
        return Err(Error::InvalidInput("max-min error needs at least one estimate".into()));
    }
    Ok(dominant
        .iter()
        .map(|&l| {
            estimates
                .iter()
                .map(|&e| distance(e, l, wrapped))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max))
}

pub fn single_error(estimate: f64, target: f64, wrapped: bool) -> f64 {
    distance(estimate, target, wrapped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        assert_eq!(maxmin_error(&[0.1, 0.2], &[0.1, 0.2], false).unwrap(), 0.0);
        assert!((maxmin_error(&[0.1], &[0.1, 0.5], false).unwrap() - 0.4).abs() < 1e-15);
        let e = maxmin_error(&[0.09, 0.21, 0.9], &[0.1, 0.2], false).unwrap();
        assert!((e - 0.01).abs() < 1e-12);
        assert!(maxmin_error(&[], &[0.1], false).is_err());
    }

    #[test]
    fn wrapped_across_seam() {
        let e = maxmin_error(&[-PI + 1e-3], &[PI - 1e-3], true).unwrap();
        assert!((e - 2e-3).abs() < 1e-12);
        assert!(maxmin_error(&[-PI + 1e-3], &[PI - 1e-3], false).unwrap() > 6.0);
    }

    #[test]
    fn permutation_and_monotonicity() {
        let dom = [-0.3, 0.25];
        let a = maxmin_error(&[0.2, -0.31, 0.7], &dom, false).unwrap();
        let b = maxmin_error(&[0.7, 0.2, -0.31], &dom, false).unwrap();
        assert_eq!(a, b);
        let c = maxmin_error(&[0.7, 0.2, -0.31, 0.26], &dom, false).unwrap();
        assert!(c <= a);
    }
}
