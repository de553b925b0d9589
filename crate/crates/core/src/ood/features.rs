use std::io::Read;
use std::path::Path;

use super::Truth;
use crate::error::{Error, Result};
use crate::report::csv_reader;

/// Dense row-major matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: Vec<Vec<f64>>,
    cols: usize,
}

impl FeatureMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidDataset("feature matrix has no columns".into()));
        }
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset("non-finite feature value".into()));
            }
        }
        Ok(FeatureMatrix { rows, cols })
    }

    /// Numeric CSV. A first line that does not parse as numbers is taken as a
    /// header; `#` lines are ignored.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, &path.display().to_string())
    }

    pub fn from_reader<R: Read>(reader: R, source: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, rec) in csv_reader(reader, false).records().enumerate() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(r) => rows.push(r),
                Err(_) if n == 0 => continue,
                Err(e) => return Err(Error::Parse { path: source.into(), line, msg: e.to_string() }),
            }
        }
        Self::from_rows(rows).map_err(|e| Error::Parse { path: source.into(), line: 0, msg: e.to_string() })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sample variance of every column.
    pub fn column_variances(&self) -> Vec<f64> {
        let n = self.rows.len() as f64;
        (0..self.cols)
            .map(|j| {
                let mean = self.rows.iter().map(|r| r[j]).sum::<f64>() / n;
                self.rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Test instances with the classifier's predicted class and, optionally, the
/// ground-truth ID/OOD label.
#[derive(Debug, Clone)]
pub struct TestSet {
    pub ids: Vec<String>,
    pub features: FeatureMatrix,
    pub predicted: Vec<i64>,
    pub truth: Option<Vec<Truth>>,
}

impl TestSet {
    /// CSV with a header. Columns `predicted` (required), `instance_id` and
    /// `truth` (`id` or `ood`) are recognised by name; all others are features.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, &path.display().to_string())
    }

    pub fn from_reader<R: Read>(reader: R, source: &str) -> Result<Self> {
        let mut rdr = csv_reader(reader, true);
        let header = rdr.headers()?.clone();
        let find = |name: &str| header.iter().position(|h| h.eq_ignore_ascii_case(name));
        let err = |line: usize, msg: String| Error::Parse { path: source.into(), line, msg };
        let pred_col = find("predicted").ok_or_else(|| err(1, "missing `predicted` column".into()))?;
        let id_col = find("instance_id");
        let truth_col = find("truth");
        let feature_cols: Vec<usize> =
            (0..header.len()).filter(|&c| c != pred_col && Some(c) != id_col && Some(c) != truth_col).collect();

        let (mut ids, mut rows, mut predicted, mut truth) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (n, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            ids.push(id_col.map_or_else(|| n.to_string(), |c| rec[c].to_string()));
            predicted.push(rec[pred_col].parse::<i64>().map_err(|e| err(line, format!("predicted: {e}")))?);
            if let Some(c) = truth_col {
                truth.push(rec[c].parse::<Truth>().map_err(|e| err(line, e))?);
            }
            let row = feature_cols
                .iter()
                .map(|&c| rec[c].parse::<f64>().map_err(|e| err(line, format!("column {}: {e}", &header[c]))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let features = FeatureMatrix::from_rows(rows).map_err(|e| err(0, e.to_string()))?;
        Ok(TestSet { ids, features, predicted, truth: truth_col.map(|_| truth) })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["instance_id".to_string()];
        header.extend((0..self.features.cols()).map(|j| format!("f{j}")));
        header.push("predicted".into());
        if self.truth.is_some() {
            header.push("truth".into());
        }
        w.write_record(&header).expect("in-memory write");
        for (i, row) in self.features.rows().iter().enumerate() {
            let mut rec = vec![self.ids[i].clone()];
            rec.extend(row.iter().map(|v| v.to_string()));
            rec.push(self.predicted[i].to_string());
            if let Some(t) = &self.truth {
                rec.push(t[i].to_string());
            }
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_optional() {
        let a = FeatureMatrix::from_reader("x,y\n1,2\n3,4\n".as_bytes(), "t").unwrap();
        let b = FeatureMatrix::from_reader("# note\n1,2\n3,4\n".as_bytes(), "t").unwrap();
        assert_eq!(a, b);
        assert!(FeatureMatrix::from_reader("1,2\n3,x\n".as_bytes(), "t").is_err());
    }

    #[test]
    fn variances() {
        let m = FeatureMatrix::from_rows(vec![vec![1.0, 0.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(m.column_variances(), vec![0.0, 2.0]);
    }

    #[test]
    fn test_set_round_trip() {
        let text = "instance_id,a,b,predicted,truth\nx,1,2,0,id\ny,3,4,1,ood\n";
        let t = TestSet::from_reader(text.as_bytes(), "t").unwrap();
        assert_eq!(t.predicted, vec![0, 1]);
        assert_eq!(t.truth.as_deref(), Some(&[Truth::Id, Truth::Ood][..]));
        let again = TestSet::from_reader(t.to_csv().as_bytes(), "t").unwrap();
        assert_eq!(again.features, t.features);
        assert_eq!(again.ids, t.ids);
    }
}
