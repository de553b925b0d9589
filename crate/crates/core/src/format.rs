//! JSON file format for quantum mass functions.
//!
//! ```json
//! { "atoms": ["a1", "a2"], "entries": [ { "set": ["a1"], "re": 1.0, "im": 0.0 } ] }
//! ```

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::fusion::FusionReport;
use crate::qmf::Qmf;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QmfFile {
    pub atoms: Vec<String>,
    pub entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryFile {
    pub set: Vec<String>,
    pub re: f64,
    pub im: f64,
}

impl QmfFile {
    pub fn from_qmf(q: &Qmf) -> Self {
        let frame = q.frame();
        QmfFile {
            atoms: frame.atoms().to_vec(),
            entries: q
                .iter()
                .map(|(s, a)| EntryFile {
                    set: frame.labels_of(s).into_iter().map(String::from).collect(),
                    re: a.re(),
                    im: a.im(),
                })
                .collect(),
        }
    }

    /// Validate against every QMF invariant. Pass a frame to share it between
    /// several files.
    pub fn into_qmf(self, shared: Option<&Arc<Frame>>) -> Result<Qmf> {
        let frame = Arc::new(Frame::new(self.atoms)?);
        let frame = match shared {
            Some(f) if **f == *frame => f.clone(),
            Some(_) => return Err(Error::FrameMismatch),
            None => frame,
        };
        let raw = self
            .entries
            .iter()
            .map(|e| Ok((frame.set_of(&e.set)?, Complex64::new(e.re, e.im))))
            .collect::<Result<Vec<_>>>()?;
        Qmf::new(frame, raw)
    }
}

fn parse_error(path: &Path, e: serde_json::Error) -> Error {
    Error::Parse { path: path.display().to_string(), line: e.line(), msg: e.to_string() }
}

pub fn read_qmf(path: &Path) -> Result<Qmf> {
    let text = std::fs::read_to_string(path)?;
    let file: QmfFile = serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    file.into_qmf(None).map_err(|e| locate(path, None, e))
}

/// A JSON array of QMF objects, all on one frame.
pub fn read_qmf_list(path: &Path) -> Result<Vec<Qmf>> {
    let text = std::fs::read_to_string(path)?;
    let files: Vec<QmfFile> = serde_json::from_str(&text).map_err(|e| parse_error(path, e))?;
    let mut out: Vec<Qmf> = Vec::with_capacity(files.len());
    for (i, f) in files.into_iter().enumerate() {
        let shared = out.first().map(|q| q.frame().clone());
        out.push(f.into_qmf(shared.as_ref()).map_err(|e| locate(path, Some(i), e))?);
    }
    Ok(out)
}

/// Content errors have no useful line number; name the file and entry.
fn locate(path: &Path, entry: Option<usize>, e: Error) -> Error {
    let at = entry.map(|i| format!(" entry {i}")).unwrap_or_default();
    Error::InvalidInput(format!("{}{at}: {e}", path.display()))
}

pub fn qmf_to_json(q: &Qmf) -> String {
    serde_json::to_string_pretty(&QmfFile::from_qmf(q)).expect("plain data")
}

/// Serialized form of a fusion run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusionReportFile {
    pub conflict_matrix: Vec<Vec<f64>>,
    pub support: Vec<f64>,
    pub discounts: Vec<f64>,
    pub pignistic: Vec<f64>,
    pub fused: QmfFile,
}

impl FusionReportFile {
    pub fn from_report(r: &FusionReport<Qmf>) -> Self {
        FusionReportFile {
            conflict_matrix: (0..r.matrix.order()).map(|i| r.matrix.row(i).to_vec()).collect(),
            support: r.support.clone(),
            discounts: r.discounts.clone(),
            pignistic: r.fused.pignistic(),
            fused: QmfFile::from_qmf(&r.fused),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let text = r#"{ "atoms": ["a1","a2"], "entries": [ { "set": ["a1"], "re": 1.0, "im": 0.0 } ] }"#;
        let f: QmfFile = serde_json::from_str(text).unwrap();
        let q = f.into_qmf(None).unwrap();
        assert_eq!(q.len(), 1);
        let back: QmfFile = serde_json::from_str(&qmf_to_json(&q)).unwrap();
        assert_eq!(back.into_qmf(None).unwrap(), q);
    }

    #[test]
    fn rejects_invalid_content() {
        let unnormalized = r#"{ "atoms": ["a1","a2"], "entries": [ { "set": ["a1"], "re": 0.5, "im": 0.0 } ] }"#;
        let f: QmfFile = serde_json::from_str(unnormalized).unwrap();
        assert!(matches!(f.into_qmf(None), Err(Error::NotNormalized(_))));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("q.json");
        std::fs::write(&p, unnormalized).unwrap();
        let msg = read_qmf(&p).unwrap_err().to_string();
        assert!(msg.contains("q.json") && msg.contains("0.25"), "{msg}");

        let unknown = r#"{ "atoms": ["a1"], "entries": [ { "set": ["b"], "re": 1.0, "im": 0.0 } ] }"#;
        let f: QmfFile = serde_json::from_str(unknown).unwrap();
        assert!(f.into_qmf(None).is_err());
    }
}
