use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Id,
    Ood,
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::Id => "id",
            Truth::Ood => "ood",
        })
    }
}

impl FromStr for Truth {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "id" => Ok(Truth::Id),
            "ood" => Ok(Truth::Ood),
            _ => Err(format!("truth must be `id` or `ood`, got {s:?}")),
        }
    }
}

/// Which end of the score scale means out-of-distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    OodHigh,
    IdHigh,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::OodHigh => "ood-high",
            Orientation::IdHigh => "id-high",
        }
    }

    /// Map a score onto the ood-high scale.
    pub fn apply(self, s: f64) -> f64 {
        match self {
            Orientation::OodHigh => s,
            Orientation::IdHigh => -s,
        }
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ood-high" => Ok(Orientation::OodHigh),
            "id-high" => Ok(Orientation::IdHigh),
            _ => Err(format!("orientation must be ood-high or id-high, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreRecord {
    pub score_c: f64,
    pub score_d: Option<f64>,
    pub composite: Option<f64>,
    pub truth: Option<Truth>,
}

fn split(scores: &[f64], truth: &[Truth], orientation: Orientation) -> Result<(Vec<f64>, Vec<f64>)> {
    if scores.len() != truth.len() {
        return Err(Error::DimensionMismatch { expected: scores.len(), got: truth.len() });
    }
    let (mut id, mut ood) = (Vec::new(), Vec::new());
    for (&s, &t) in scores.iter().zip(truth) {
        match t {
            Truth::Id => id.push(orientation.apply(s)),
            Truth::Ood => ood.push(orientation.apply(s)),
        }
    }
    if id.is_empty() || ood.is_empty() {
        return Err(Error::SingleClassOnly);
    }
    Ok((id, ood))
}

/// Probability that a random OOD record outscores a random ID record, ties
/// counting one half.
pub fn auc(scores: &[f64], truth: &[Truth], orientation: Orientation) -> Result<f64> {
    let (id, ood) = split(scores, truth, orientation)?;
    let mut all: Vec<(f64, bool)> = id.iter().map(|&s| (s, false)).chain(ood.iter().map(|&s| (s, true))).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    // midranks, 1-based
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j + 1 < all.len() && all[j + 1].0 == all[i].0 {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        rank_sum += mid * all[i..=j].iter().filter(|r| r.1).count() as f64;
        i = j + 1;
    }
    let (n_id, n_ood) = (id.len() as f64, ood.len() as f64);
    Ok((rank_sum - n_ood * (n_ood + 1.0) / 2.0) / (n_id * n_ood))
}

/// Linear-interpolation percentile of sorted data, `q` in [0, 1].
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub const FPR95_MIN_ID: usize = 20;

/// Fraction of OOD records at or below the score that admits 95% of ID
/// records.
pub fn fpr95(scores: &[f64], truth: &[Truth], orientation: Orientation) -> Result<f64> {
    let (mut id, ood) = split(scores, truth, orientation)?;
    if id.len() < FPR95_MIN_ID {
        return Err(Error::TooFewPositives { needed: FPR95_MIN_ID, got: id.len() });
    }
    id.sort_by(f64::total_cmp);
    let t = percentile(&id, 0.95);
    Ok(ood.iter().filter(|&&s| s <= t).count() as f64 / ood.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Truth::{Id, Ood};

    #[test]
    fn auc_examples() {
        let t = [Id, Id, Ood, Ood];
        assert_eq!(auc(&[0.1, 0.4, 0.3, 0.9], &t, Orientation::OodHigh).unwrap(), 0.75);
        assert_eq!(auc(&[0.1, 0.2, 0.3, 0.9], &t, Orientation::OodHigh).unwrap(), 1.0);
        assert_eq!(auc(&[0.1, 0.2, 0.3, 0.9], &t, Orientation::IdHigh).unwrap(), 0.0);
        assert_eq!(auc(&[0.5; 4], &t, Orientation::OodHigh).unwrap(), 0.5);
        assert!(matches!(auc(&[0.1], &[Id], Orientation::OodHigh), Err(Error::SingleClassOnly)));
    }

    #[test]
    fn fpr95_examples() {
        let mut scores = vec![0.0; 20];
        let mut truth = vec![Id; 20];
        scores.extend([1.0; 10]);
        scores.extend([-1.0; 10]);
        truth.extend([Ood; 20]);
        assert_eq!(fpr95(&scores, &truth, Orientation::OodHigh).unwrap(), 0.5);

        let few = [0.0, 1.0];
        assert!(matches!(fpr95(&few, &[Id, Ood], Orientation::OodHigh), Err(Error::TooFewPositives { .. })));
    }

    #[test]
    fn fpr95_same_distribution() {
        let id: Vec<f64> = (0..100).map(f64::from).collect();
        let scores: Vec<f64> = id.iter().chain(&id).copied().collect();
        let truth: Vec<Truth> = [Id; 100].into_iter().chain([Ood; 100]).collect();
        let f = fpr95(&scores, &truth, Orientation::OodHigh).unwrap();
        assert!((f - 0.95).abs() <= 0.01, "{f}");
    }
}
