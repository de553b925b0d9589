use log::warn;

use crate::error::{Error, Result};

/// `λ·max_i cos(L, w_i) + ‖L‖`; larger means more out-of-distribution.
pub fn dml_score(logits: &[f64], weights: &[Vec<f64>], lambda: f64) -> Result<f64> {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let l_norm = norm(logits);
    if l_norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let mut best = f64::NEG_INFINITY;
    for w in weights {
        if w.len() != logits.len() {
            return Err(Error::DimensionMismatch { expected: logits.len(), got: w.len() });
        }
        let w_norm = norm(w);
        if w_norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let dot: f64 = logits.iter().zip(w).map(|(a, b)| a * b).sum();
        best = best.max(dot / (l_norm * w_norm));
    }
    if weights.is_empty() {
        return Err(Error::TooFew { needed: 1, got: 0 });
    }
    Ok(lambda * best + l_norm)
}

/// `(k1 + s1)·(k2 + s2)`. Shifted scores outside [0, 1] are logged, not
/// rejected.
pub fn composite_score(s1: f64, s2: f64, k1: f64, k2: f64) -> f64 {
    let (a, b) = (k1 + s1, k2 + s2);
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        warn!("shifted scores ({a}, {b}) fall outside [0, 1]");
    }
    a * b
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmlParams {
    pub lambda: f64,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub params: DmlParams,
}

/// Backbone-specific settings.
pub const PRESETS: [Preset; 4] = [
    Preset { name: "vgg", params: DmlParams { lambda: 7.6, k1: 0.0, k2: -82.0 } },
    Preset { name: "wrn", params: DmlParams { lambda: 0.4, k1: 0.0, k2: -14.0 } },
    Preset { name: "vit", params: DmlParams { lambda: 8.6, k1: 0.0, k2: -91.0 } },
    Preset { name: "swin", params: DmlParams { lambda: 0.8, k1: 0.0, k2: -1.6 } },
];

pub fn preset(name: &str) -> Option<DmlParams> {
    PRESETS.iter().find(|p| p.name.eq_ignore_ascii_case(name)).map(|p| p.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dml_examples() {
        let w = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_abs_diff_eq!(dml_score(&[3.0, 4.0], &w, 2.0).unwrap(), 6.6, epsilon = 1e-12);
        assert_abs_diff_eq!(dml_score(&[3.0, 4.0], &w, 0.0).unwrap(), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dml_score(&[2.0, 0.0], &w, 1.5).unwrap(), 3.5, epsilon = 1e-12);
        assert!(matches!(dml_score(&[0.0, 0.0], &w, 1.0), Err(Error::ZeroNorm)));
    }

    #[test]
    fn composite_examples() {
        assert_abs_diff_eq!(composite_score(0.3, 82.5, 0.0, -82.0), 0.15, epsilon = 1e-12);
        assert_eq!(composite_score(0.0, 5.0, 0.0, 0.0), 0.0);
        assert_eq!(composite_score(1.0, 1.0, 0.0, 0.0), 1.0);
        assert_eq!(preset("VGG").unwrap().k2, -82.0);
        assert!(preset("resnet").is_none());
    }
}
