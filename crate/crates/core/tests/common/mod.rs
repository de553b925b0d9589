//! Reference implementations shared by the integration tests. They are
//! written independently of the library: polar form with explicit cosines,
//! atom counting by bit loops and brute-force redistribution.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;
use qdst::{ClassicalMass, FocalSet, Frame, Qmf};
use rand::Rng;

pub fn frame(n: usize) -> Arc<Frame> {
    Arc::new(Frame::numbered(n).unwrap())
}

fn size(bits: u64) -> f64 {
    (0..64).filter(|i| bits >> i & 1 == 1).count() as f64
}

pub fn oracle_inner(a: &Qmf, b: &Qmf) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (sa, za) in a.iter() {
        for (sb, zb) in b.iter() {
            let inter = size(sa.bits() & sb.bits());
            if inter == 0.0 {
                continue;
            }
            let (ra, ta) = za.value().to_polar();
            let (rb, tb) = zb.value().to_polar();
            let g = ((ta - tb).cos() + 1.0) / 2.0;
            acc += Complex64::from_polar(ra * rb, tb - ta) * g * (inter / size(sa.bits() | sb.bits()));
        }
    }
    acc
}

pub fn oracle_qcc(a: &Qmf, b: &Qmf) -> f64 {
    let r = oracle_inner(a, b).norm() / (oracle_inner(a, a).norm() * oracle_inner(b, b).norm()).sqrt();
    r.powi(4)
}

/// PCR5 by enumerating ordered focal pairs: agreeing pairs go to their
/// intersection, conflicting pairs split `x·y` back in proportion to `x` and `y`.
pub fn oracle_pcr5(m1: &ClassicalMass, m2: &ClassicalMass) -> BTreeMap<u64, f64> {
    let mut out = BTreeMap::new();
    for (a, x) in m1.iter() {
        for (b, y) in m2.iter() {
            let k = a.bits() & b.bits();
            if k != 0 {
                *out.entry(k).or_insert(0.0) += x * y;
            } else {
                *out.entry(a.bits()).or_insert(0.0) += x * x * y / (x + y);
                *out.entry(b.bits()).or_insert(0.0) += y * y * x / (x + y);
            }
        }
    }
    out.retain(|_, v| *v != 0.0);
    out
}

/// Random QMF on `n` atoms with up to `max_sets` focal sets.
pub fn random_qmf(rng: &mut impl Rng, n: usize, max_sets: usize) -> Qmf {
    let full = (1u64 << n) - 1;
    let count = rng.random_range(1..=max_sets.min(full as usize));
    let mut entries = BTreeMap::new();
    while entries.len() < count {
        let s = rng.random_range(1..=full);
        let r: f64 = rng.random_range(0.01..1.0);
        let t: f64 = rng.random_range(0.0..=FRAC_PI_2);
        entries.insert(s, Complex64::from_polar(r, t));
    }
    Qmf::normalized(frame(n), entries.into_iter().map(|(s, z)| (FocalSet(s), z))).unwrap()
}

/// Random QMF whose focal sets all lie inside `mask`.
pub fn random_qmf_within(rng: &mut impl Rng, n: usize, mask: u64, max_sets: usize) -> Qmf {
    let subsets: Vec<u64> = (1..=mask).filter(|s| s & !mask == 0).collect();
    let count = rng.random_range(1..=max_sets.min(subsets.len()));
    let mut entries = BTreeMap::new();
    while entries.len() < count {
        let s = subsets[rng.random_range(0..subsets.len())];
        let z = Complex64::from_polar(rng.random_range(0.01..1.0), rng.random_range(0.0..=FRAC_PI_2));
        entries.insert(s, z);
    }
    Qmf::normalized(frame(n), entries.into_iter().map(|(s, z)| (FocalSet(s), z))).unwrap()
}

pub fn random_mass(rng: &mut impl Rng, n: usize) -> ClassicalMass {
    let full = (1u64 << n) - 1;
    let count = rng.random_range(1..=full as usize);
    let mut entries = BTreeMap::new();
    while entries.len() < count {
        entries.insert(rng.random_range(1..=full), rng.random_range(0.01..1.0));
    }
    let total: f64 = entries.values().sum();
    ClassicalMass::new(frame(n), entries.into_iter().map(|(s, v)| (FocalSet(s), v / total))).unwrap()
}

/// Columns of a headered CSV split on commas, without the csv crate.
pub fn read_plain_csv(path: &std::path::Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty());
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}
