//! File-level workflow: fit class spaces from a manifest, persist them,
//! score test instances and evaluate labelled scores.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    auc, build_cdds, composite_score, default_keep_count, dml_score, fpr95, ClassDomainSpace, Decision, DmlParams,
    FeatureMatrix, Orientation, Policy, ScoreRecord, TestSet, Truth,
};
use crate::error::{Error, Result};
use crate::report::{csv_reader, num, CsvTable};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestClass {
    pub id: i64,
    pub train: PathBuf,
    pub valid: PathBuf,
}

/// `{ "classes": [ { "id", "train", "valid" } ], "keep_count", "policy" }`;
/// paths are relative to the manifest file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub classes: Vec<ManifestClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep_count: Option<usize>,
    #[serde(default)]
    pub policy: Policy,
    #[serde(skip)]
    base: PathBuf,
}

/// Training and validation features of one class.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub id: i64,
    pub train: FeatureMatrix,
    pub valid: FeatureMatrix,
}

impl Manifest {
    pub fn new(classes: Vec<ManifestClass>, keep_count: Option<usize>, policy: Policy) -> Self {
        Manifest { classes, keep_count, policy, base: PathBuf::new() }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut m: Manifest = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: e.line(),
            msg: e.to_string(),
        })?;
        if m.classes.is_empty() {
            return Err(Error::InvalidDataset(format!("{}: manifest lists no classes", path.display())));
        }
        let mut ids: Vec<i64> = m.classes.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDataset(format!("{}: duplicate class id", path.display())));
        }
        m.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(m)
    }

    pub fn load_data(&self) -> Result<Vec<ClassData>> {
        self.classes
            .iter()
            .map(|c| {
                Ok(ClassData {
                    id: c.id,
                    train: FeatureMatrix::from_csv(&self.base.join(&c.train))?,
                    valid: FeatureMatrix::from_csv(&self.base.join(&c.valid))?,
                })
            })
            .collect()
    }
}

/// One class space per class, built in parallel. `keep_count` defaults to
/// 62.5% of the columns.
pub fn fit(classes: &[ClassData], keep_count: Option<usize>, policy: Policy) -> Result<Vec<ClassDomainSpace>> {
    classes
        .par_iter()
        .map(|c| {
            let keep = keep_count.unwrap_or_else(|| default_keep_count(c.valid.cols()));
            build_cdds(c.id, &c.train, &c.valid, keep, policy).map_err(|e| match e {
                Error::InvalidKeepCount { .. } | Error::DimensionMismatch { .. } => e,
                other => Error::ClassFit { class: c.id, source: Box::new(other) },
            })
        })
        .collect()
}

pub fn write_store(dir: &Path, spaces: &[ClassDomainSpace]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for s in spaces {
        let text = serde_json::to_string_pretty(s)?;
        std::fs::write(dir.join(format!("class_{}.json", s.class_id)), text + "\n")?;
    }
    Ok(())
}

pub fn read_store(dir: &Path) -> Result<Vec<ClassDomainSpace>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if name.starts_with("class_") && name.ends_with(".json") {
            let text = std::fs::read_to_string(&path)?;
            let space: ClassDomainSpace = serde_json::from_str(&text).map_err(|e| Error::Parse {
                path: path.display().to_string(),
                line: e.line(),
                msg: e.to_string(),
            })?;
            out.push(space);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidDataset(format!("{}: no class_<id>.json files", dir.display())));
    }
    out.sort_by_key(|s| s.class_id);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRow {
    pub instance_id: String,
    pub class: i64,
    pub score_c: f64,
    pub score_d: Option<f64>,
    pub composite: Option<f64>,
    pub decision: Decision,
    pub policy: Policy,
    pub truth: Option<Truth>,
}

/// Logits, classifier weight rows and score parameters.
pub type DmlInput<'a> = (&'a FeatureMatrix, &'a FeatureMatrix, DmlParams);

/// Score every test instance against the space of its predicted class.
/// `policy` overrides the policy stored with each space.
pub fn score(
    store: &[ClassDomainSpace],
    test: &TestSet,
    dml: Option<DmlInput<'_>>,
    policy: Option<Policy>,
) -> Result<Vec<ScoredRow>> {
    if let Some((logits, _, _)) = dml {
        if logits.len() != test.features.len() {
            return Err(Error::DimensionMismatch { expected: test.features.len(), got: logits.len() });
        }
    }
    (0..test.features.len())
        .into_par_iter()
        .map(|i| {
            let class = test.predicted[i];
            let space = store.iter().find(|s| s.class_id == class).ok_or(Error::UnknownClass(class))?;
            let d = space.decision(test.features.row(i))?;
            let policy = policy.unwrap_or(space.policy);
            let score_c = 1.0 - d;
            let (score_d, composite) = match dml {
                Some((logits, weights, p)) => {
                    let s2 = dml_score(logits.row(i), weights.rows(), p.lambda)?;
                    (Some(s2), Some(composite_score(score_c, s2, p.k1, p.k2)))
                }
                None => (None, None),
            };
            Ok(ScoredRow {
                instance_id: test.ids[i].clone(),
                class,
                score_c,
                score_d,
                composite,
                decision: space.classify(d, policy),
                policy,
                truth: test.truth.as_ref().map(|t| t[i]),
            })
        })
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn scores_table(rows: &[ScoredRow], seed: u64) -> CsvTable {
    let with_truth = rows.iter().any(|r| r.truth.is_some());
    let mut header = vec!["instance_id", "class", "score_c", "score_d", "composite", "decision", "policy"];
    if with_truth {
        header.push("truth");
    }
    let mut t = CsvTable::new(header).meta("seed", seed).meta("version", crate::VERSION);
    for r in rows {
        let mut rec = vec![
            r.instance_id.clone(),
            r.class.to_string(),
            num(r.score_c),
            opt(r.score_d),
            opt(r.composite),
            r.decision.to_string(),
            r.policy.to_string(),
        ];
        if with_truth {
            rec.push(r.truth.map(|t| t.to_string()).unwrap_or_default());
        }
        t.push(rec);
    }
    t
}

/// Read a scores CSV written by [`scores_table`]; every row needs a truth
/// label.
pub fn read_score_records(path: &Path) -> Result<Vec<ScoreRecord>> {
    let source = path.display().to_string();
    let mut rdr = csv_reader(std::fs::File::open(path)?, true);
    let header = rdr.headers()?.clone();
    let col = |name: &str| header.iter().position(|h| h == name);
    let err = |line: usize, msg: String| Error::Parse { path: source.clone(), line, msg };
    let c = col("score_c").ok_or_else(|| err(1, "missing score_c column".into()))?;
    let t = col("truth").ok_or_else(|| err(1, "missing truth column".into()))?;
    let (d, m) = (col("score_d"), col("composite"));
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let parse = |i: usize| rec[i].parse::<f64>().map_err(|e| err(line, format!("{}: {e}", &header[i])));
        let optional = |i: Option<usize>| match i {
            Some(i) if !rec[i].is_empty() => parse(i).map(Some),
            _ => Ok(None),
        };
        out.push(ScoreRecord {
            score_c: parse(c)?,
            score_d: optional(d)?,
            composite: optional(m)?,
            truth: Some(rec[t].parse::<Truth>().map_err(|e| err(line, e))?),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub score: &'static str,
    pub auc: f64,
    pub fpr95: f64,
    pub n_id: usize,
    pub n_ood: usize,
}

/// AUC and FPR95 for every score column that is present on all records.
pub fn evaluate(records: &[ScoreRecord], orientation: Orientation) -> Result<Vec<MetricRow>> {
    let truth: Vec<Truth> = records.iter().map(|r| r.truth.ok_or(Error::SingleClassOnly)).collect::<Result<_>>()?;
    let n_id = truth.iter().filter(|t| **t == Truth::Id).count();
    let columns: [(&'static str, Option<Vec<f64>>); 3] = [
        ("score_c", Some(records.iter().map(|r| r.score_c).collect())),
        ("score_d", records.iter().map(|r| r.score_d).collect()),
        ("composite", records.iter().map(|r| r.composite).collect()),
    ];
    let mut out = Vec::new();
    for (name, values) in columns {
        let Some(values) = values else { continue };
        out.push(MetricRow {
            score: name,
            auc: auc(&values, &truth, orientation)?,
            fpr95: fpr95(&values, &truth, orientation)?,
            n_id,
            n_ood: truth.len() - n_id,
        });
    }
    Ok(out)
}

pub fn metrics_table(rows: &[MetricRow], orientation: Orientation, seed: u64) -> CsvTable {
    let mut t = CsvTable::new(["score", "auc", "fpr95", "n_id", "n_ood", "orientation"])
        .meta("seed", seed)
        .meta("version", crate::VERSION);
    for r in rows {
        t.push(vec![
            r.score.into(),
            num(r.auc),
            num(r.fpr95),
            r.n_id.to_string(),
            r.n_ood.to_string(),
            orientation.name().into(),
        ]);
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub keep_count: usize,
    pub metrics: Vec<MetricRow>,
}

/// Refit and rescore at each retained-feature count.
pub fn keep_count_sweep(
    classes: &[ClassData],
    test: &TestSet,
    keep_counts: &[usize],
    dml: Option<DmlInput<'_>>,
    orientation: Orientation,
) -> Result<Vec<SweepRow>> {
    keep_counts
        .iter()
        .map(|&k| {
            let store = fit(classes, Some(k), Policy::default())?;
            let scored = score(&store, test, dml, None)?;
            let records: Vec<ScoreRecord> = scored
                .iter()
                .map(|r| ScoreRecord { score_c: r.score_c, score_d: r.score_d, composite: r.composite, truth: r.truth })
                .collect();
            Ok(SweepRow { keep_count: k, metrics: evaluate(&records, orientation)? })
        })
        .collect()
}

pub fn sweep_table(rows: &[SweepRow], orientation: Orientation, seed: u64) -> CsvTable {
    let mut t = CsvTable::new(["keep_count", "score", "auc", "fpr95", "orientation"])
        .meta("seed", seed)
        .meta("version", crate::VERSION);
    for row in rows {
        for m in &row.metrics {
            t.push(vec![row.keep_count.to_string(), m.score.into(), num(m.auc), num(m.fpr95), orientation.name().into()]);
        }
    }
    t
}
