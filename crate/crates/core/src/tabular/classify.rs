use std::fmt;
use std::str::FromStr;

use super::{attribute_qmf, ClassStatistics};
use crate::combine::{drc_classic, murphy_combine};
use crate::error::{Error, Result};
use crate::fusion::{combine_all, fuse};
use crate::qmf::{argmax, ClassicalMass, Qmf};

/// How the per-attribute evidence is merged into one decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Conflict-weighted discounting followed by the quantum Dempster rule.
    QciFusion,
    /// Quantum Dempster rule without weighting.
    DrcQm,
    /// Dempster's rule on the squared masses.
    DrcClassic,
    /// Murphy's averaging rule on the squared masses.
    Murphy,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::QciFusion, Method::DrcQm, Method::DrcClassic, Method::Murphy];

    pub fn name(self) -> &'static str {
        match self {
            Method::QciFusion => "qci-fusion",
            Method::DrcQm => "drc-qm",
            Method::DrcClassic => "drc-classic",
            Method::Murphy => "murphy",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}; expected one of qci-fusion, drc-qm, drc-classic, murphy"))
    }
}

/// Predicted class index for one feature row.
pub fn classify_instance(stats: &ClassStatistics, instance: &[f64], method: Method) -> Result<usize> {
    let qmfs: Vec<Qmf> = (0..stats.attributes()).map(|j| attribute_qmf(stats, instance, j)).collect::<Result<_>>()?;
    let Some(first) = qmfs.first() else {
        return Err(Error::TooFew { needed: 1, got: 0 });
    };
    if qmfs.len() == 1 {
        return Ok(argmax(&first.pignistic()));
    }
    let betp = match method {
        Method::QciFusion => fuse(&qmfs)?.fused.pignistic(),
        Method::DrcQm => combine_all(&qmfs)?.pignistic(),
        Method::DrcClassic => {
            let masses: Vec<ClassicalMass> = qmfs.iter().map(Qmf::squared_mass).collect();
            masses[1..].iter().try_fold(masses[0].clone(), |acc, m| drc_classic(&acc, m))?.pignistic()
        }
        Method::Murphy => {
            let masses: Vec<ClassicalMass> = qmfs.iter().map(Qmf::squared_mass).collect();
            murphy_combine(&masses)?.pignistic()
        }
    };
    Ok(argmax(&betp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::{class_statistics, Dataset};

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("pcr5".parse::<Method>().is_err());
    }

    #[test]
    fn single_attribute_uses_its_own_argmax() {
        let d = Dataset {
            attributes: vec!["x".into()],
            classes: vec!["a".into(), "b".into()],
            rows: vec![vec![0.0], vec![1.0], vec![5.0], vec![6.0]],
            labels: vec![0, 0, 1, 1],
        };
        let s = class_statistics(&d, &[0, 1, 2, 3]).unwrap();
        let expected = argmax(&attribute_qmf(&s, &[5.2], 0).unwrap().pignistic());
        for m in Method::ALL {
            assert_eq!(classify_instance(&s, &[5.2], m).unwrap(), expected);
        }
    }
}
