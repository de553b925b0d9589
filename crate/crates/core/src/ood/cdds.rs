use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FeatureMatrix;
use crate::error::{Error, Result};
use crate::fusion::fuse;
use crate::singleton::SingletonQmf;
use crate::tabular::AttributeStats;

/// Default number of retained features: 62.5% of the columns.
pub fn default_keep_count(features: usize) -> usize {
    ((features as f64 * 0.625).round() as usize).clamp(1, features.max(1))
}

/// Indices of the `keep` lowest-variance columns of the validation matrix,
/// ties going to the lower index. Returned in ascending order.
pub fn common_feature_mask(valid: &FeatureMatrix, keep: usize) -> Result<Vec<usize>> {
    let n = valid.cols();
    if keep == 0 || keep > n {
        return Err(Error::InvalidKeepCount { keep, features: n });
    }
    let var = valid.column_variances();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| var[a].total_cmp(&var[b]).then(a.cmp(&b)));
    let mut kept = order[..keep].to_vec();
    kept.sort_unstable();
    Ok(kept)
}

/// Unit-norm complex vector over a subset of feature columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptionVector {
    kept: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl DescriptionVector {
    pub fn new(kept: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if kept.len() != amplitudes.len() {
            return Err(Error::DimensionMismatch { expected: kept.len(), got: amplitudes.len() });
        }
        let total: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if total == 0.0 || !total.is_finite() {
            return Err(Error::ZeroTotal);
        }
        let scale = total.sqrt().recip();
        Ok(DescriptionVector { kept, amplitudes: amplitudes.into_iter().map(|z| z * scale).collect() })
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// The same amplitudes as singleton-only evidence over the kept features.
    pub fn to_evidence(&self) -> Result<SingletonQmf> {
        SingletonQmf::from_amplitudes(self.amplitudes.clone())
    }
}

/// `|⟨a,b⟩|² / (⟨a,a⟩·⟨b,b⟩)` with the plain complex dot product.
pub fn decision_function(a: &DescriptionVector, b: &DescriptionVector) -> Result<f64> {
    if a.kept != b.kept {
        return Err(Error::KeptMismatch);
    }
    let (mut ab, mut aa, mut bb) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        ab += x.conj() * y;
        aa += x.norm_sqr();
        bb += y.norm_sqr();
    }
    if aa == 0.0 || bb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((ab.norm_sqr() / (aa * bb)).clamp(0.0, 1.0))
}

/// Training moments of the kept columns of one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub kept: Vec<usize>,
    pub count: usize,
    pub mean: Vec<f64>,
    pub m2: Vec<f64>,
}

impl ColumnStats {
    pub fn new(train: &FeatureMatrix, kept: &[usize]) -> Result<Self> {
        if train.len() < 2 {
            return Err(Error::DegenerateClass { class: "training set".into(), rows: train.len() });
        }
        if let Some(&bad) = kept.iter().find(|&&j| j >= train.cols()) {
            return Err(Error::DimensionMismatch { expected: train.cols(), got: bad + 1 });
        }
        let (mean, m2) = kept
            .iter()
            .map(|&j| {
                let s = AttributeStats::from_values(train.rows().iter().map(|r| r[j]));
                (s.mean, s.m2)
            })
            .unzip();
        Ok(ColumnStats { kept: kept.to_vec(), count: train.len(), mean, m2 })
    }

    /// Per kept feature `exp(-|σ' - σ|)·e^{i·min(|μ' - μ|, π/2)}`, the primed
    /// moments including `instance`, normalized over the kept features.
    pub fn describe(&self, instance: &[f64]) -> Result<DescriptionVector> {
        let n = self.count as f64;
        let mut gaps = Vec::with_capacity(self.kept.len());
        let mut phases = Vec::with_capacity(self.kept.len());
        for (k, &j) in self.kept.iter().enumerate() {
            let x = *instance.get(j).ok_or(Error::DimensionMismatch { expected: j + 1, got: instance.len() })?;
            let before = AttributeStats { mean: self.mean[k], m2: self.m2[k], count: self.count };
            let after = before.with(x);
            let sigma_after = (after.m2.max(0.0) / n).sqrt();
            gaps.push((sigma_after - before.std()).abs());
            phases.push((after.mean - before.mean).abs().min(FRAC_PI_2));
        }
        // a common factor cancels in the normalization; shifting by the
        // smallest gap keeps far-away instances from underflowing
        let floor = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        let amps = gaps.iter().zip(&phases).map(|(g, p)| Complex64::from_polar((floor - g).exp(), *p)).collect();
        DescriptionVector::new(self.kept.clone(), amps)
    }
}

pub fn description_vector(train: &FeatureMatrix, instance: &[f64], kept: &[usize]) -> Result<DescriptionVector> {
    ColumnStats::new(train, kept)?.describe(instance)
}

/// Direction of the in-distribution test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// ID iff the decision value is at most the largest validation value.
    /// Spelled `paper-literal` on the command line and in stored spaces.
    #[serde(rename = "paper-literal")]
    DomainCeiling,
    /// ID iff the decision value is at least the smallest validation value.
    #[default]
    SimilarityConsistent,
}

impl Policy {
    pub fn name(self) -> &'static str {
        match self {
            Policy::DomainCeiling => "paper-literal",
            Policy::SimilarityConsistent => "similarity-consistent",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper-literal" => Ok(Policy::DomainCeiling),
            "similarity-consistent" => Ok(Policy::SimilarityConsistent),
            _ => Err(format!("policy must be paper-literal or similarity-consistent, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Id,
    Ood,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Id => "ID",
            Decision::Ood => "OOD",
        })
    }
}

/// Fused description of one in-distribution class and its similarity domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDomainSpace {
    pub class_id: i64,
    /// Column count of the feature space.
    pub features: usize,
    pub kept: Vec<usize>,
    pub center: Vec<Complex64>,
    /// Largest validation decision value.
    pub domain: f64,
    /// Smallest validation decision value.
    pub min_decision: f64,
    pub policy: Policy,
    pub stats: ColumnStats,
}

/// Fuse the validation description vectors of one class into its center and
/// measure the validation decision values against it.
pub fn build_cdds(
    class_id: i64,
    train: &FeatureMatrix,
    valid: &FeatureMatrix,
    keep_count: usize,
    policy: Policy,
) -> Result<ClassDomainSpace> {
    if valid.len() < 2 {
        return Err(Error::TooFewValidationRows { class: class_id, rows: valid.len() });
    }
    if valid.cols() != train.cols() {
        return Err(Error::DimensionMismatch { expected: train.cols(), got: valid.cols() });
    }
    let kept = common_feature_mask(valid, keep_count)?;
    let stats = ColumnStats::new(train, &kept)?;
    let vectors: Vec<DescriptionVector> =
        valid.rows().par_iter().map(|r| stats.describe(r)).collect::<Result<_>>()?;
    let evidence: Vec<SingletonQmf> = vectors.iter().map(DescriptionVector::to_evidence).collect::<Result<_>>()?;
    let fused = fuse(&evidence)?.fused;
    // the frame amplitude has no feature to attach to and is dropped
    let center_vec = DescriptionVector::new(kept.clone(), fused.atoms().to_vec())?;
    let center = center_vec.amplitudes.clone();
    let decisions: Vec<f64> = vectors.iter().map(|v| decision_function(v, &center_vec)).collect::<Result<_>>()?;
    let domain = decisions.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_decision = decisions.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ClassDomainSpace { class_id, features: train.cols(), kept, center, domain, min_decision, policy, stats })
}

impl ClassDomainSpace {
    pub fn center(&self) -> DescriptionVector {
        DescriptionVector { kept: self.kept.clone(), amplitudes: self.center.clone() }
    }

    pub fn describe(&self, instance: &[f64]) -> Result<DescriptionVector> {
        if instance.len() != self.features {
            return Err(Error::DimensionMismatch { expected: self.features, got: instance.len() });
        }
        self.stats.describe(instance)
    }

    /// Decision value of `instance` against the class center.
    pub fn decision(&self, instance: &[f64]) -> Result<f64> {
        decision_function(&self.describe(instance)?, &self.center())
    }

    /// `1 - decision`; larger is more out-of-distribution.
    pub fn score_c(&self, instance: &[f64]) -> Result<f64> {
        Ok(1.0 - self.decision(instance)?)
    }

    pub fn classify(&self, decision: f64, policy: Policy) -> Decision {
        let id = match policy {
            Policy::DomainCeiling => decision <= self.domain,
            Policy::SimilarityConsistent => decision >= self.min_decision,
        };
        if id {
            Decision::Id
        } else {
            Decision::Ood
        }
    }
}
