use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::frame::MAX_ATOMS;

/// Numeric feature table with one class label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub attributes: Vec<String>,
    /// Class labels in order of first appearance.
    pub classes: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Index into `classes` per row.
    pub labels: Vec<usize>,
}

const MISSING: [&str; 5] = ["", "?", "na", "nan", "null"];

impl Dataset {
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, &path.display().to_string())
    }

    /// Header row required; the last column is the label, the rest numeric.
    pub fn from_reader<R: Read>(reader: R, source: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.len() < 2 {
            return Err(Error::InvalidDataset(format!("{source}: need at least one attribute and a label column")));
        }
        let attributes: Vec<String> = header.iter().take(header.len() - 1).map(String::from).collect();
        let mut data = Dataset { attributes, classes: Vec::new(), rows: Vec::new(), labels: Vec::new() };
        let parse_err = |line: u64, msg: String| Error::Parse { path: source.to_string(), line: line as usize, msg };

        for rec in rdr.records() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line());
            if rec.len() != header.len() {
                return Err(parse_err(line, format!("expected {} fields, found {}", header.len(), rec.len())));
            }
            let mut row = Vec::with_capacity(rec.len() - 1);
            for (j, field) in rec.iter().take(rec.len() - 1).enumerate() {
                if MISSING.contains(&field.to_ascii_lowercase().as_str()) {
                    return Err(parse_err(line, format!("missing value in column {}", data.attributes[j])));
                }
                let v: f64 = field
                    .parse()
                    .map_err(|_| parse_err(line, format!("non-numeric value {field:?} in column {}", data.attributes[j])))?;
                if !v.is_finite() {
                    return Err(parse_err(line, format!("non-finite value in column {}", data.attributes[j])));
                }
                row.push(v);
            }
            let label = &rec[rec.len() - 1];
            if label.is_empty() || label == "?" {
                return Err(parse_err(line, "missing class label".into()));
            }
            let k = match data.classes.iter().position(|c| c == label) {
                Some(k) => k,
                None => {
                    data.classes.push(label.to_string());
                    data.classes.len() - 1
                }
            };
            data.rows.push(row);
            data.labels.push(k);
        }
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        if self.classes.len() < 2 {
            return Err(Error::InvalidDataset(format!("need at least 2 classes, found {}", self.classes.len())));
        }
        if self.classes.len() > MAX_ATOMS {
            return Err(Error::InvalidDataset(format!("{} classes exceed the limit of {MAX_ATOMS}", self.classes.len())));
        }
        if self.rows.len() != self.labels.len() || self.rows.iter().any(|r| r.len() != self.attributes.len()) {
            return Err(Error::InvalidDataset("ragged rows".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row indices grouped by class.
    pub fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes.len()];
        for (i, &k) in self.labels.iter().enumerate() {
            out[k].push(i);
        }
        out
    }

    /// Accuracy of always predicting the most frequent class.
    pub fn majority_baseline(&self) -> f64 {
        let best = self.class_indices().iter().map(Vec::len).max().unwrap_or(0);
        best as f64 / self.len().max(1) as f64
    }
}
