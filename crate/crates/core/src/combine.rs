//! Combination rules: the quantum Dempster rule on amplitudes, and the
//! classical Dempster, Murphy and PCR5 rules on real masses.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::qmf::{ClassicalMass, Qmf};

/// Quantities computed alongside a quantum combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrcDiagnostics {
    /// Root of the total squared magnitude on non-empty intersections; the
    /// divisor actually applied.
    pub normalizer: f64,
    /// `1 - Σ_{A∩B=∅} |qm1(A) qm2(B)|`, the conflict coefficient as it is
    /// usually printed. Reported only.
    pub literal_k: f64,
}

/// Quantum Dempster combination of two QMFs.
pub fn drc_qm(q1: &Qmf, q2: &Qmf) -> Result<Qmf> {
    drc_qm_with_diagnostics(q1, q2).map(|(q, _)| q)
}

pub fn drc_qm_with_diagnostics(q1: &Qmf, q2: &Qmf) -> Result<(Qmf, DrcDiagnostics)> {
    q1.ensure_same_frame(q2)?;
    let mut acc: BTreeMap<FocalSet, Complex64> = BTreeMap::new();
    let mut empty_mass = 0.0;
    for (a, za) in q1.iter() {
        for (b, zb) in q2.iter() {
            let prod = za.value() * zb.value();
            let k = a.intersection(b);
            if k.is_empty() {
                empty_mass += prod.norm();
            } else {
                *acc.entry(k).or_default() += prod;
            }
        }
    }
    let total: f64 = acc.values().map(|z| z.norm_sqr()).sum();
    if total == 0.0 {
        return Err(Error::TotalConflict);
    }
    let diag = DrcDiagnostics { normalizer: total.sqrt(), literal_k: 1.0 - empty_mass };
    let q = Qmf::from_combined(q1.frame().clone(), acc)?;
    Ok((q, diag))
}

/// Dempster's rule on classical masses.
pub fn drc_classic(m1: &ClassicalMass, m2: &ClassicalMass) -> Result<ClassicalMass> {
    m1.ensure_same_frame(m2)?;
    let mut acc: BTreeMap<FocalSet, f64> = BTreeMap::new();
    let mut conflict = 0.0;
    for (a, x) in m1.iter() {
        for (b, y) in m2.iter() {
            let k = a.intersection(b);
            if k.is_empty() {
                conflict += x * y;
            } else {
                *acc.entry(k).or_default() += x * y;
            }
        }
    }
    let agreement: f64 = acc.values().sum();
    if agreement <= 0.0 || conflict >= 1.0 {
        return Err(Error::TotalConflict);
    }
    ClassicalMass::from_combined(m1.frame().clone(), acc)
}

/// Murphy's rule: average the masses, then combine the average with itself
/// `n - 1` times by Dempster's rule.
pub fn murphy_combine(masses: &[ClassicalMass]) -> Result<ClassicalMass> {
    let n = masses.len();
    if n < 2 {
        return Err(Error::TooFew { needed: 2, got: n });
    }
    let first = &masses[0];
    let mut sum: BTreeMap<FocalSet, f64> = BTreeMap::new();
    for m in masses {
        first.ensure_same_frame(m)?;
        for (s, v) in m.iter() {
            *sum.entry(s).or_default() += v;
        }
    }
    let mean = ClassicalMass::from_combined(
        first.frame().clone(),
        sum.into_iter().map(|(s, v)| (s, v / n as f64)),
    )?;
    let mut out = mean.clone();
    for _ in 1..n {
        out = drc_classic(&out, &mean)?;
    }
    Ok(out)
}

/// Proportional conflict redistribution rule no. 5 for two sources.
///
/// Each target set keeps its conjunctive consensus and receives back its
/// proportional share of every partial conflict it took part in, from
/// either source.
pub fn pcr5(m1: &ClassicalMass, m2: &ClassicalMass) -> Result<ClassicalMass> {
    m1.ensure_same_frame(m2)?;
    let mut focal: Vec<FocalSet> = m1.iter().chain(m2.iter()).map(|(s, _)| s).collect();
    focal.sort_unstable();
    focal.dedup();

    let mut targets = focal.clone();
    for (a, _) in m1.iter() {
        for (b, _) in m2.iter() {
            let k = a.intersection(b);
            if !k.is_empty() {
                targets.push(k);
            }
        }
    }
    targets.sort_unstable();
    targets.dedup();

    let out: Vec<(FocalSet, f64)> = targets
        .into_iter()
        .map(|x| {
            let mut v = 0.0;
            for (a, p) in m1.iter() {
                for (b, q) in m2.iter() {
                    if a.intersection(b) == x {
                        v += p * q;
                    }
                }
            }
            let (p1x, p2x) = (m1.get(x), m2.get(x));
            for &y in focal.iter().filter(|y| x.intersection(**y).is_empty()) {
                let (p1y, p2y) = (m1.get(y), m2.get(y));
                // zero denominators mean zero conflict mass; nothing to hand back
                if p1x + p2y > 0.0 {
                    v += p1x * p1x * p2y / (p1x + p2y);
                }
                if p2x + p1y > 0.0 {
                    v += p2x * p2x * p1y / (p2x + p1y);
                }
            }
            (x, v)
        })
        .collect();
    ClassicalMass::from_combined(m1.frame().clone(), out)
}
