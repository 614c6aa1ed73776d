//! Parameter selection from model statistics.
//!
//! The guarantees only fix parameters up to constants; the defaults below
//! are choices, exposed through [`ParamConstants`].

use serde::{Deserialize, Serialize};

use super::QmegsConfig;
use crate::error::{Error, Result};
use crate::spectrum::GapReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// No gap assumption.
    General,
    /// `T` large compared with `1/Δ_dom`.
    GappedDominant,
    /// `T` large compared with `1/Δ`.
    GappedTail,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamConstants {
    /// Block constant scale.
    pub c1: f64,
    /// Sample count scale.
    pub c2: f64,
    /// Depth-to-gap scale in the gapped regimes.
    pub c3: f64,
    /// Truncation scale.
    pub c_sigma: f64,
    /// Noise level of the gapped-tail regime; must lie in `(0, p_min/4)`.
    /// Defaults to `p_min/8`.
    pub zeta: Option<f64>,
}

impl Default for ParamConstants {
    fn default() -> Self {
        Self { c1: 5.0, c2: 8.0, c3: 6.0, c_sigma: 2.0, zeta: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremParams {
    pub config: QmegsConfig,
    pub warnings: Vec<String>,
}

/// Shot count above which a warning is attached.
const LARGE_N: f64 = 1e8;

fn log_scale(x: f64) -> f64 {
    (1.0 / x).ln().sqrt().max(1.0)
}

/// Chooses `(N, T, σ, α, q)` for a target accuracy `epsilon` and failure
/// probability `eta`. `K` is set to the number of dominant modes.
pub fn theorem_params(
    regime: Regime,
    stats: &GapReport,
    n_dominant: usize,
    epsilon: f64,
    eta: f64,
    constants: &ParamConstants,
) -> Result<TheoremParams> {
    let (p_min, p_tail) = (stats.p_min, stats.p_tail);
    if !(p_min > p_tail) {
        return Err(Error::ModelCondition(format!(
            "p_min = {p_min} does not exceed p_tail = {p_tail}"
        )));
    }
    if !(epsilon > 0.0 && eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid(format!(
            "need epsilon > 0 and 0 < eta < 1, got {epsilon}, {eta}"
        )));
    }
    if n_dominant == 0 {
        return Err(Error::invalid("at least one dominant mode is required"));
    }
    let mut warnings = Vec::new();
    let gap = p_min - p_tail;

    // Largest q keeping p_min e^{−q²/2} above the midpoint between p_tail and p_min.
    let q_general = (2.0 * (p_min / (p_tail + gap / 2.0)).ln()).sqrt();

    // Noise scale that sets σ, α and N.
    let scale = match regime {
        Regime::General => gap,
        Regime::GappedDominant => {
            if p_tail == 0.0 {
                warnings.push("p_tail = 0: gapped-dominant scale undefined, using p_min - p_tail".into());
                gap
            } else {
                (gap / p_tail).min(1.0) * p_tail
            }
        }
        Regime::GappedTail => {
            let zeta = constants.zeta.unwrap_or(p_min / 8.0);
            if !(zeta > 0.0 && zeta < p_min / 4.0) {
                return Err(Error::invalid(format!(
                    "zeta must lie in (0, p_min/4) = (0, {}), got {zeta}",
                    p_min / 4.0
                )));
            }
            zeta
        }
    };

    let sigma = constants.c_sigma * log_scale(scale);
    let alpha = constants.c1 * log_scale(scale);
    let mut q_raw = q_general.min(alpha / 3.0);
    if regime != Regime::General {
        q_raw = q_raw.min(scale / sigma);
    }
    // q = α/n with n ≥ 4 keeps q < α/3 strictly and α/q integral.
    let steps = (alpha / q_raw).ceil().max(4.0);
    let q = alpha / steps;

    let mut depth = alpha / epsilon;
    match regime {
        Regime::General => {}
        Regime::GappedDominant => {
            if stats.delta_dom.is_finite() {
                depth = depth.max(constants.c3 * alpha / stats.delta_dom);
            }
        }
        Regime::GappedTail => {
            if stats.delta.is_finite() && stats.delta > 0.0 {
                depth = depth.max(constants.c3 * alpha / stats.delta);
            } else {
                warnings.push("Δ is zero or undefined; depth set from epsilon only".into());
            }
        }
    }

    let n_real = (constants.c2 / (scale * scale))
        * ((depth / q + n_dominant as f64) / eta).ln();
    let n = if n_real.is_finite() && n_real < usize::MAX as f64 {
        n_real.ceil() as usize
    } else {
        warnings.push(format!("required N = {n_real:.3e} saturated at usize::MAX"));
        usize::MAX
    };
    if n_real > LARGE_N {
        warnings.push(format!("very large N = {n_real:.3e}: p_min - p_tail = {gap:.3e} is tiny"));
    }

    let config = QmegsConfig { n: n.max(1), depth, sigma, alpha, q, k: n_dominant };
    config.validate()?;
    Ok(TheoremParams { config, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(p_min: f64, p_tail: f64, delta_dom: f64, delta: f64) -> GapReport {
        GapReport { delta_dom, delta, p_min, p_tail }
    }

    #[test]
    fn general_regime_structure() {
        let s = stats(0.4, 0.2, 0.2, 0.1);
        let p = theorem_params(Regime::General, &s, 2, 1e-2, 0.05, &ParamConstants::default()).unwrap();
        let c = p.config;
        assert!(c.q < c.alpha / 3.0);
        let ratio = c.alpha / c.q;
        assert!((ratio - ratio.round()).abs() < 1e-9);
        assert!((c.depth - c.alpha / 1e-2).abs() < 1e-9 * c.depth);
        assert_eq!(c.k, 2);
        // α = 5 · max(1, √ln 5).
        assert!((c.alpha - 5.0 * (5.0f64).ln().sqrt()).abs() < 1e-12);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn gapped_dominant_depth() {
        let s = stats(0.4, 0.2, 0.2, 0.1);
        let c = ParamConstants::default();
        let p = theorem_params(Regime::GappedDominant, &s, 2, 1.0, 0.05, &c).unwrap();
        assert!(p.config.depth >= c.c3 * p.config.alpha / 0.2);
    }

    #[test]
    fn gapped_tail_depth_and_zeta() {
        let s = stats(0.4, 0.2, 0.2, 0.1);
        let c = ParamConstants::default();
        let p = theorem_params(Regime::GappedTail, &s, 2, 1.0, 0.05, &c).unwrap();
        assert!(p.config.depth >= c.c3 * p.config.alpha / 0.1);
        let bad = ParamConstants { zeta: Some(0.2), ..c };
        assert!(theorem_params(Regime::GappedTail, &s, 2, 1.0, 0.05, &bad).is_err());
    }

    #[test]
    fn near_degenerate_overlaps_warn() {
        let s = stats(0.5 + 5e-10, 0.5 - 5e-10, 0.1, 0.1);
        let p = theorem_params(Regime::General, &s, 1, 1e-2, 0.05, &ParamConstants::default()).unwrap();
        assert!(p.config.n > 1_000_000_000);
        assert!(!p.warnings.is_empty());
    }

    #[test]
    fn condition_violation() {
        let s = stats(0.3, 0.3, 0.1, 0.1);
        assert!(matches!(
            theorem_params(Regime::General, &s, 2, 1e-2, 0.05, &ParamConstants::default()),
            Err(Error::ModelCondition(_))
        ));
    }
}
