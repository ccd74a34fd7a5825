//! Productivity and value-by-level curves for reporting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Money;

/// Share of productive time given value `v_i` and fitness:
/// `1 - exp(-fitness · v_i)`.
pub fn productivity(v_i: Money, fitness: f64) -> Result<f64> {
    if !(fitness.is_finite() && fitness > 0.0) {
        return Err(Error::domain("fitness", fitness, "must be finite and > 0"));
    }
    if !(v_i >= 0.0) {
        return Err(Error::domain("v_i", v_i, "must be >= 0"));
    }
    Ok(-(-fitness * v_i).exp_m1())
}

/// Value to the individual at `level` of a `max_levels` hierarchy whose
/// lowest level earns `v1` and whose CEO-to-worker ratio is `ceo_ratio`.
/// Level 1 returns `v1`; higher levels grow linearly, `v1 · (ratio / N) · level`.
pub fn value_by_level(v1: Money, ceo_ratio: f64, max_levels: u32, level: u32) -> Result<Money> {
    if !(v1.is_finite() && v1 >= 0.0) {
        return Err(Error::domain("v1", v1, "must be finite and >= 0"));
    }
    if !(ceo_ratio.is_finite() && ceo_ratio > 0.0) {
        return Err(Error::domain("ceo_ratio", ceo_ratio, "must be finite and > 0"));
    }
    if level < 1 || level > max_levels {
        return Err(Error::domain("level", level as f64, "must lie in 1..=max_levels"));
    }
    if level == 1 {
        return Ok(v1);
    }
    Ok(v1 * (ceo_ratio / max_levels as f64) * level as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// Value to the individual by organisation level.
    Vi,
    /// Productivity as a function of value to the individual.
    Productivity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveConfig {
    pub which: CurveKind,
    /// Grid points for productivity; number of levels for the value curve.
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub x: f64,
    pub typical: f64,
    pub expected: f64,
    pub ideal: f64,
}

/// Productivity is sampled over value 0..=10.
pub const PRODUCTIVITY_DOMAIN: f64 = 10.0;
/// Lowest-level value used by the value-by-level presets.
pub const VI_BASE_VALUE: Money = 10.0;

/// Samples the typical, expected and ideal series.
///
/// Productivity: typical `1 - e^-v`, expected `1 - e^-2v`, ideal `1`, on an
/// even grid of `samples` points over `[0, 10]`.
///
/// Value by level: levels `1..=samples` with `N = samples`; typical uses a
/// CEO ratio of `N`, expected `N / 2` and ideal `N / 5`.
pub fn emit_curves(config: &CurveConfig) -> Result<Vec<CurveSample>> {
    if config.samples < 2 {
        return Err(Error::domain("samples", config.samples as f64, "must be >= 2"));
    }
    match config.which {
        CurveKind::Productivity => {
            let step = PRODUCTIVITY_DOMAIN / (config.samples - 1) as f64;
            (0..config.samples)
                .map(|i| {
                    let v = if i + 1 == config.samples {
                        PRODUCTIVITY_DOMAIN
                    } else {
                        i as f64 * step
                    };
                    Ok(CurveSample {
                        x: v,
                        typical: productivity(v, 1.0)?,
                        expected: productivity(v, 2.0)?,
                        ideal: 1.0,
                    })
                })
                .collect()
        }
        CurveKind::Vi => {
            let levels = u32::try_from(config.samples)
                .map_err(|_| Error::domain("samples", config.samples as f64, "too many levels"))?;
            let n = levels as f64;
            (1..=levels)
                .map(|level| {
                    Ok(CurveSample {
                        x: level as f64,
                        typical: value_by_level(VI_BASE_VALUE, n, levels, level)?,
                        expected: value_by_level(VI_BASE_VALUE, n / 2.0, levels, level)?,
                        ideal: value_by_level(VI_BASE_VALUE, n / 5.0, levels, level)?,
                    })
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn productivity_examples() {
        assert_eq!(productivity(0.0, 3.0).unwrap(), 0.0);
        let far = productivity(50.0, 1.0).unwrap();
        assert!(far <= 1.0 && far > 1.0 - 1e-15);
        for i in 1..100 {
            let v = i as f64 * 0.1;
            assert!(productivity(v, 2.0).unwrap() > productivity(v, 1.0).unwrap());
        }
        assert!(productivity(1.0, 0.0).is_err());
        assert!(productivity(-1.0, 1.0).is_err());
    }

    #[test]
    fn value_by_level_examples() {
        for k in 1..=7 {
            let expected = if k == 1 { 100.0 } else { 100.0 * k as f64 };
            assert!((value_by_level(100.0, 7.0, 7, k).unwrap() - expected).abs() < 1e-9);
        }
        assert_eq!(value_by_level(100.0, 5.0, 10, 4).unwrap(), 200.0);
        assert_eq!(value_by_level(100.0, 3.3, 9, 1).unwrap(), 100.0);
        assert!(value_by_level(100.0, 5.0, 10, 11).is_err());
        assert!(value_by_level(100.0, 5.0, 10, 0).is_err());
        assert!(value_by_level(100.0, 0.0, 10, 2).is_err());
    }

    #[test]
    fn top_level_attains_ratio() {
        assert!((value_by_level(12.0, 8.0, 6, 6).unwrap() - 96.0).abs() < 1e-12);
    }

    #[test]
    fn productivity_grid() {
        let s = emit_curves(&CurveConfig {
            which: CurveKind::Productivity,
            samples: 3,
        })
        .unwrap();
        let xs: Vec<f64> = s.iter().map(|c| c.x).collect();
        assert_eq!(xs, vec![0.0, 5.0, 10.0]);
        assert_eq!((s[0].typical, s[0].expected), (0.0, 0.0));
        assert!(s.iter().all(|c| c.ideal == 1.0));
    }

    #[test]
    fn vi_presets() {
        let s = emit_curves(&CurveConfig {
            which: CurveKind::Vi,
            samples: 10,
        })
        .unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s[0].typical, VI_BASE_VALUE);
        assert!((s[9].typical - 100.0).abs() < 1e-9);
        assert!((s[9].expected - 50.0).abs() < 1e-9);
        assert!((s[9].ideal - 20.0).abs() < 1e-9);
    }

    #[test]
    fn too_few_samples() {
        assert!(emit_curves(&CurveConfig {
            which: CurveKind::Productivity,
            samples: 1
        })
        .is_err());
    }
}
