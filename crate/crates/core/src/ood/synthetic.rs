//! Gaussian feature clouds with a displaced out-of-distribution cluster and
//! matching logits, for exercising the OOD pipeline end to end.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::pipeline::ClassData;
use super::{DmlParams, FeatureMatrix, Manifest, ManifestClass, Policy, TestSet, Truth};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub classes: usize,
    pub dims: usize,
    /// Distance between any two class centers.
    pub separation: f64,
    pub train: usize,
    pub valid: usize,
    /// In-distribution test rows per class.
    pub test: usize,
    pub ood: usize,
    /// Distance from the first class center to the OOD center.
    pub ood_shift: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            classes: 3,
            dims: 64,
            separation: 10.0,
            train: 200,
            valid: 50,
            test: 50,
            ood: 150,
            ood_shift: 20.0,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticOod {
    pub classes: Vec<ClassData>,
    pub test: TestSet,
    /// One logit vector per test row, one entry per class.
    pub logits: FeatureMatrix,
    /// Identity classifier weights.
    pub weights: FeatureMatrix,
    /// Score parameters that map the logit score of ID rows near 0.1 and of
    /// OOD rows into roughly [0.7, 0.95].
    pub dml: DmlParams,
}

fn gaussian_rows(rng: &mut ChaCha8Rng, center: &[f64], n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| center.iter().map(|c| c + rng.sample::<f64, _>(StandardNormal)).collect()).collect()
}

fn nearest(centers: &[Vec<f64>], x: &[f64]) -> usize {
    let dist = |c: &Vec<f64>| c.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    let mut best = 0;
    for (g, c) in centers.iter().enumerate().skip(1) {
        if dist(c) < dist(&centers[best]) {
            best = g;
        }
    }
    best
}

impl SyntheticOod {
    /// Unit-variance classes centered at `(separation/√2)·e_g`, and OOD rows
    /// around the first center moved `ood_shift` along a random direction.
    /// Every test row is assigned the class of the nearest center.
    pub fn generate(cfg: &SyntheticConfig) -> Result<Self> {
        if cfg.classes < 2 || cfg.classes > cfg.dims {
            return Err(Error::InvalidDataset(format!("{} classes in {} dimensions", cfg.classes, cfg.dims)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let scale = cfg.separation / 2f64.sqrt();
        let centers: Vec<Vec<f64>> = (0..cfg.classes)
            .map(|g| (0..cfg.dims).map(|j| if j == g { scale } else { 0.0 }).collect())
            .collect();

        let mut classes = Vec::new();
        let mut test_rows = Vec::new();
        let mut truth = Vec::new();
        let mut ids = Vec::new();
        for (g, c) in centers.iter().enumerate() {
            let train = FeatureMatrix::from_rows(gaussian_rows(&mut rng, c, cfg.train))?;
            let valid = FeatureMatrix::from_rows(gaussian_rows(&mut rng, c, cfg.valid))?;
            classes.push(ClassData { id: g as i64, train, valid });
            for (i, r) in gaussian_rows(&mut rng, c, cfg.test).into_iter().enumerate() {
                ids.push(format!("id-{g}-{i}"));
                test_rows.push(r);
                truth.push(Truth::Id);
            }
        }
        let mut dir: Vec<f64> = (0..cfg.dims).map(|_| rng.sample(StandardNormal)).collect();
        let len = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        dir.iter_mut().for_each(|v| *v *= cfg.ood_shift / len);
        let ood_center: Vec<f64> = centers[0].iter().zip(&dir).map(|(a, b)| a + b).collect();
        for (i, r) in gaussian_rows(&mut rng, &ood_center, cfg.ood).into_iter().enumerate() {
            ids.push(format!("ood-{i}"));
            test_rows.push(r);
            truth.push(Truth::Ood);
        }
        let predicted: Vec<i64> = test_rows.iter().map(|r| nearest(&centers, r) as i64).collect();

        // ID logits point at the predicted class with unit norm; OOD logits
        // are longer and point in a random positive direction
        let logits = predicted
            .iter()
            .zip(&truth)
            .map(|(&p, t)| {
                let noise = |rng: &mut ChaCha8Rng| 0.05 * rng.sample::<f64, _>(StandardNormal);
                match t {
                    Truth::Id => (0..cfg.classes).map(|g| (g as i64 == p) as u8 as f64 + noise(&mut rng)).collect(),
                    Truth::Ood => {
                        let u: Vec<f64> = (0..cfg.classes).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect();
                        let n = u.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
                        u.iter().map(|v| 1.8 * v / n + noise(&mut rng)).collect::<Vec<f64>>()
                    }
                }
            })
            .collect();
        let weights = (0..cfg.classes).map(|g| (0..cfg.classes).map(|j| (g == j) as u8 as f64).collect()).collect();

        Ok(SyntheticOod {
            classes,
            test: TestSet { ids, features: FeatureMatrix::from_rows(test_rows)?, predicted, truth: Some(truth) },
            logits: FeatureMatrix::from_rows(logits)?,
            weights: FeatureMatrix::from_rows(weights)?,
            dml: DmlParams { lambda: 0.5, k1: 0.0, k2: -1.4 },
        })
    }

    /// Write `manifest.json`, per-class train/valid CSVs, `test.csv`,
    /// `logits.csv` and `weights.csv` into `dir`.
    pub fn write(&self, dir: &Path, keep_count: Option<usize>) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut entries = Vec::new();
        for c in &self.classes {
            let train = format!("class_{}_train.csv", c.id);
            let valid = format!("class_{}_valid.csv", c.id);
            std::fs::write(dir.join(&train), c.train.to_csv())?;
            std::fs::write(dir.join(&valid), c.valid.to_csv())?;
            entries.push(ManifestClass { id: c.id, train: train.into(), valid: valid.into() });
        }
        let manifest = Manifest::new(entries, keep_count, Policy::default());
        std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
        std::fs::write(dir.join("test.csv"), self.test.to_csv())?;
        std::fs::write(dir.join("logits.csv"), self.logits.to_csv())?;
        std::fs::write(dir.join("weights.csv"), self.weights.to_csv())?;
        Ok(())
    }
}
