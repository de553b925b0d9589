use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{class_statistics, classify_instance, Dataset, Method};
use crate::error::{Error, Result};
use crate::report::{num, CsvTable};

/// How much of each class goes into the training set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitSize {
    /// Fraction of every class, rounded to the nearest row.
    Fraction(f64),
    /// Absolute number of training rows per class.
    PerClass(usize),
}

impl SplitSize {
    fn train_count(self, class_rows: usize) -> Result<usize> {
        match self {
            SplitSize::Fraction(f) => {
                if !(f > 0.0 && f < 1.0) {
                    return Err(Error::InvalidFraction(f));
                }
                Ok(((f * class_rows as f64).round() as usize).min(class_rows))
            }
            SplitSize::PerClass(n) => Ok(n.min(class_rows)),
        }
    }

    /// Value reported in the `fraction` column.
    pub fn label(self) -> f64 {
        match self {
            SplitSize::Fraction(f) => f,
            SplitSize::PerClass(n) => n as f64,
        }
    }
}

/// Shuffle each class with `rng` and cut it at the requested size. Returns
/// `(train, test)` row indices, both sorted.
pub fn stratified_split(data: &Dataset, size: SplitSize, rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (k, mut rows) in data.class_indices().into_iter().enumerate() {
        let n = size.train_count(rows.len())?;
        if n < 2 {
            return Err(Error::DegenerateClass { class: data.classes[k].clone(), rows: n });
        }
        rows.shuffle(rng);
        train.extend_from_slice(&rows[..n]);
        test.extend_from_slice(&rows[n..]);
    }
    if test.is_empty() {
        return Err(Error::InvalidFraction(size.label()));
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRow {
    pub method: Method,
    pub size: SplitSize,
    pub mean_accuracy: f64,
    pub runs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyTable {
    pub rows: Vec<AccuracyRow>,
}

impl AccuracyTable {
    pub fn get(&self, method: Method, label: f64) -> Option<f64> {
        self.rows.iter().find(|r| r.method == method && r.size.label() == label).map(|r| r.mean_accuracy)
    }

    pub fn to_csv(&self, seed: u64) -> CsvTable {
        let mut t = CsvTable::new(["method", "fraction", "mean_accuracy", "runs", "seed"])
            .meta("seed", seed)
            .meta("version", crate::VERSION);
        for r in &self.rows {
            t.push(vec![r.method.to_string(), num(r.size.label()), num(r.mean_accuracy), r.runs.to_string(), r.seed.to_string()]);
        }
        t
    }
}

/// Accuracy of each method for each split size, averaged over `runs`
/// independent stratified splits. Run `r` uses the stream seeded with
/// `seed + r`, so results do not depend on thread scheduling.
pub fn monte_carlo_eval(
    data: &Dataset,
    sizes: &[SplitSize],
    runs: usize,
    methods: &[Method],
    seed: u64,
) -> Result<AccuracyTable> {
    if runs == 0 {
        return Err(Error::TooFew { needed: 1, got: 0 });
    }
    data.validate()?;
    let mut rows = Vec::new();
    for &size in sizes {
        // one accuracy per (run, method), kept in run order
        let per_run: Vec<Vec<f64>> = (0..runs)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
                let (train, test) = stratified_split(data, size, &mut rng)?;
                let stats = class_statistics(data, &train)?;
                methods
                    .iter()
                    .map(|&m| {
                        let mut correct = 0usize;
                        for &i in &test {
                            match classify_instance(&stats, &data.rows[i], m) {
                                Ok(k) if k == data.labels[i] => correct += 1,
                                Ok(_) => {}
                                Err(e) if !e.is_input_error() => {
                                    warn!("{m}: row {i} counted as misclassified: {e}");
                                }
                                Err(e) => return Err(e),
                            }
                        }
                        Ok(correct as f64 / test.len() as f64)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        for (mi, &method) in methods.iter().enumerate() {
            let total: f64 = per_run.iter().map(|accs| accs[mi]).sum();
            rows.push(AccuracyRow { method, size, mean_accuracy: total / runs as f64, runs, seed });
        }
    }
    Ok(AccuracyTable { rows })
}
