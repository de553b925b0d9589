//! Conflict-weighted fusion: pairwise QCI matrix, support degrees, discount
//! coefficients, discounting onto the frame and a left fold of the quantum
//! Dempster rule.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::combine::drc_qm;
use crate::conflict::{qci, ConflictMatrix};
use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::qmf::Qmf;
use crate::singleton::SingletonQmf;

/// Evidence that can be compared, discounted and combined.
pub trait Evidence: Clone + Sync {
    /// Quantum conflict indicator against `other`.
    fn conflict(&self, other: &Self) -> Result<f64>;
    fn discount(&self, d: f64) -> Result<Self>;
    fn combine(&self, other: &Self) -> Result<Self>;
}

impl Evidence for Qmf {
    fn conflict(&self, other: &Self) -> Result<f64> {
        qci(self, other)
    }

    fn discount(&self, d: f64) -> Result<Self> {
        discount_qmf(self, d)
    }

    fn combine(&self, other: &Self) -> Result<Self> {
        drc_qm(self, other)
    }
}

impl Evidence for SingletonQmf {
    fn conflict(&self, other: &Self) -> Result<f64> {
        self.qci(other)
    }

    fn discount(&self, d: f64) -> Result<Self> {
        SingletonQmf::discount(self, d)
    }

    fn combine(&self, other: &Self) -> Result<Self> {
        SingletonQmf::combine(self, other)
    }
}

/// `S_k = Σ_{i≠k} (1 - Q[i][k])`.
pub fn support_degrees(matrix: &ConflictMatrix) -> Result<Vec<f64>> {
    let n = matrix.order();
    if n < 2 {
        return Err(Error::TooFew { needed: 2, got: n });
    }
    Ok((0..n)
        .map(|k| sorted_sum((0..n).filter(|&i| i != k).map(|i| 1.0 - matrix.get(i, k)).collect()))
        .collect())
}

/// Summing in ascending order makes the result independent of input order.
fn sorted_sum(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}

/// `D_k = sqrt(S_k / Σ S)`.
pub fn discount_coefficients(support: &[f64]) -> Result<Vec<f64>> {
    let total = sorted_sum(support.to_vec());
    if total <= 0.0 || !total.is_finite() {
        return Err(Error::AllZeroSupport);
    }
    Ok(support.iter().map(|s| (s.max(0.0) / total).sqrt().min(1.0)).collect())
}

/// Scale every focal set other than the frame by `d`, add the complement
/// `(1-d)·qm(A)` of each onto the frame, and renormalize.
pub fn discount_qmf(q: &Qmf, d: f64) -> Result<Qmf> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::InvalidDiscount(d));
    }
    let full = q.frame().full();
    let mut out: BTreeMap<FocalSet, Complex64> = BTreeMap::new();
    let mut on_frame = q.get(full);
    for (s, a) in q.iter().filter(|(s, _)| *s != full) {
        out.insert(s, a.value() * d);
        on_frame += a.value() * (1.0 - d);
    }
    out.insert(full, on_frame);
    Qmf::from_combined(q.frame().clone(), out)
}

/// Everything computed by [`fuse`].
#[derive(Debug, Clone)]
pub struct FusionReport<E> {
    pub matrix: ConflictMatrix,
    pub support: Vec<f64>,
    pub discounts: Vec<f64>,
    pub fused: E,
}

/// Conflict-weighted fusion of at least two sources, folded left to right in
/// input order.
pub fn fuse<E: Evidence>(sources: &[E]) -> Result<FusionReport<E>> {
    let matrix = ConflictMatrix::from_pairwise(sources, E::conflict)?;
    let support = support_degrees(&matrix)?;
    let discounts = discount_coefficients(&support)?;
    let discounted: Vec<E> = sources
        .iter()
        .zip(&discounts)
        .map(|(s, d)| s.discount(*d))
        .collect::<Result<_>>()?;
    let mut fused = discounted[0].clone();
    for next in &discounted[1..] {
        fused = fused.combine(next)?;
    }
    Ok(FusionReport { matrix, support, discounts, fused })
}

/// Plain left fold of the combination rule, without any weighting.
pub fn combine_all<E: Evidence>(sources: &[E]) -> Result<E> {
    let (first, rest) = sources.split_first().ok_or(Error::TooFew { needed: 1, got: 0 })?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.combine(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::qmf::argmax;
    use approx::assert_abs_diff_eq;
    use std::sync::Arc;

    const A1: FocalSet = FocalSet(0b01);
    const A2: FocalSet = FocalSet(0b10);
    const A12: FocalSet = FocalSet(0b11);

    fn frame2() -> Arc<Frame> {
        Arc::new(Frame::numbered(2).unwrap())
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn support_examples() {
        let z = ConflictMatrix::from_rows(&[vec![0.0; 3], vec![0.0; 3], vec![0.0; 3]]).unwrap();
        assert_eq!(support_degrees(&z).unwrap(), vec![2.0, 2.0, 2.0]);
        let m = ConflictMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(support_degrees(&m).unwrap(), vec![0.0, 0.0]);
        let m = ConflictMatrix::from_rows(&[vec![0.0, 0.9375], vec![0.9375, 0.0]]).unwrap();
        let s = support_degrees(&m).unwrap();
        assert_abs_diff_eq!(s[0], 0.0625, epsilon = 1e-15);
        assert_abs_diff_eq!(s[1], 0.0625, epsilon = 1e-15);
    }

    #[test]
    fn discount_coefficient_examples() {
        let d = discount_coefficients(&[2.0, 2.0, 2.0]).unwrap();
        for x in d {
            assert_abs_diff_eq!(x, (1.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        }
        assert_eq!(discount_coefficients(&[1.0, 0.0]).unwrap(), vec![1.0, 0.0]);
        let d = discount_coefficients(&[3.0, 1.0]).unwrap();
        assert_abs_diff_eq!(d[0], 0.75f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(d[1], 0.5, epsilon = 1e-15);
        assert!(matches!(discount_coefficients(&[0.0, 0.0]), Err(Error::AllZeroSupport)));
    }

    #[test]
    fn discount_examples() {
        let h = re(0.5f64.sqrt());
        let q = Qmf::new(frame2(), [(A1, h), (A2, h)]).unwrap();
        assert_eq!(discount_qmf(&q, 1.0).unwrap(), q);

        let q = Qmf::new(frame2(), [(A1, Complex64::from_polar(0.6, 0.2)), (A2, Complex64::from_polar(0.8, 1.0))]).unwrap();
        let r = discount_qmf(&q, 0.0).unwrap();
        let sum = q.get(A1) + q.get(A2);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r.get(A12).norm(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.get(A12).arg(), sum.arg(), epsilon = 1e-15);

        let q = Qmf::new(frame2(), [(A1, re(1.0))]).unwrap();
        let r = discount_qmf(&q, 0.6).unwrap();
        let n = 0.52f64.sqrt();
        assert_abs_diff_eq!(r.get(A1).re, 0.6 / n, epsilon = 1e-15);
        assert_abs_diff_eq!(r.get(A12).re, 0.4 / n, epsilon = 1e-15);
        assert!(matches!(discount_qmf(&q, 1.5), Err(Error::InvalidDiscount(_))));
    }

    #[test]
    fn fuse_copies_keeps_argmax() {
        let q = Qmf::new(frame2(), [(A1, re(0.8)), (A2, re(0.6))]).unwrap();
        let r = fuse(&[q.clone(), q.clone(), q.clone()]).unwrap();
        assert_eq!(r.discounts[0], r.discounts[1]);
        assert_eq!(argmax(&r.fused.pignistic()), argmax(&q.pignistic()));

        let c = Qmf::new(frame2(), [(A1, re(1.0))]).unwrap();
        let r = fuse(&[c.clone(), c]).unwrap();
        // D = √½ leaves part of each source on the frame; by hand:
        // a1 ∝ (0.92388² + 2·0.92388·0.38268)², Θ ∝ 0.38268⁴
        let d = 0.5f64.sqrt();
        let n = (d * d + (1.0 - d) * (1.0 - d)).sqrt();
        let (a, t) = (d / n, (1.0 - d) / n);
        let (ma, mt) = ((a * a + 2.0 * a * t).powi(2), t.powi(4));
        let p = r.fused.pignistic();
        assert_abs_diff_eq!(p[0], (ma + mt / 2.0) / (ma + mt), epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], (mt / 2.0) / (ma + mt), epsilon = 1e-12);
        assert!(p[0] > 0.99);
    }

    #[test]
    fn fuse_fully_conflicting_pair_aborts() {
        let a = Qmf::new(frame2(), [(A1, re(1.0))]).unwrap();
        let b = Qmf::new(frame2(), [(A2, re(1.0))]).unwrap();
        assert!(matches!(fuse(&[a, b]), Err(Error::AllZeroSupport)));
    }
}
