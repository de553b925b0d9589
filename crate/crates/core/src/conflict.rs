//! Phase-weighted inner product, norm, correlation coefficient (QCC) and
//! conflict indicator (QCI) between quantum mass functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::qmf::Qmf;

/// Overshoot of the coefficient above one that is attributed to rounding.
pub const OVERSHOOT_TOLERANCE: f64 = 1e-9;

/// Weight `(cos(delta) + 1) / 2` for a phase difference `delta`.
pub fn phase_weight(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta.abs() > PI {
        return Err(Error::Domain(delta));
    }
    Ok((delta.cos() + 1.0) / 2.0)
}

/// `conj(a) * b * G(theta_a - theta_b)` without evaluating any trigonometric
/// function: `cos(theta_a - theta_b) = Re(conj(a) b) / (|a| |b|)`.
#[inline]
fn weighted_product(a: Complex64, b: Complex64) -> Complex64 {
    let p = a.conj() * b;
    let r = a.norm() * b.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    p * ((p.re / r + 1.0) / 2.0)
}

/// General evaluator: the full double sum over focal pairs, each term
/// weighted by the phase weight and the Jaccard index of the two sets.
///
/// Works for any focal sets that fit a 64-bit mask, which lets it serve as
/// the reference for the singleton fast path on vectors of up to 64 atoms.
pub fn focal_inner_product(a: &[(FocalSet, Complex64)], b: &[(FocalSet, Complex64)]) -> Complex64 {
    // fixed summation order regardless of argument order, so that swapping
    // the operands yields exactly the conjugate
    let key = |v: &[(FocalSet, Complex64)]| -> Vec<(u64, u64, u64)> {
        v.iter().map(|(s, z)| (s.bits(), z.re.to_bits(), z.im.to_bits())).collect()
    };
    if key(b) < key(a) {
        return focal_inner_product(b, a).conj();
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &(sa, za) in a {
        for &(sb, zb) in b {
            let j = sa.jaccard(sb);
            if j == 0.0 {
                continue;
            }
            acc += weighted_product(za, zb) * j;
        }
    }
    acc
}

/// O(n) inner product of two singleton-only assignments given as dense
/// vectors over the same atoms; only diagonal pairs intersect.
pub fn singleton_inner_product(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| weighted_product(*x, *y)).sum())
}

fn dense_singletons(q: &Qmf) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); q.frame().len()];
    for (s, a) in q.iter() {
        v[s.atoms().next().expect("non-empty focal set")] = a.value();
    }
    v
}

/// `<qm1|qm2>`. Singleton-only operands take the diagonal fast path.
pub fn inner_product(q1: &Qmf, q2: &Qmf) -> Result<Complex64> {
    q1.ensure_same_frame(q2)?;
    if q1.restrict_to_singletons() && q2.restrict_to_singletons() {
        return singleton_inner_product(&dense_singletons(q1), &dense_singletons(q2));
    }
    Ok(focal_inner_product(&q1.focal_pairs(), &q2.focal_pairs()))
}

/// `sqrt(|<qm|qm>|)`.
pub fn qmf_norm(q: &Qmf) -> f64 {
    inner_product(q, q).expect("same frame").norm().sqrt()
}

/// Turn an inner product and the two self inner products into the
/// coefficient `(|<a|b>| / (||a|| ||b||))^4`.
pub fn correlation_from_parts(cross: Complex64, self_a: Complex64, self_b: Complex64) -> Result<f64> {
    let denom = (self_a.norm() * self_b.norm()).sqrt();
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let ratio = cross.norm() / denom;
    let c = ratio.powi(4);
    if c > 1.0 + OVERSHOOT_TOLERANCE {
        return Err(Error::Inconsistent(format!("correlation coefficient {c} exceeds 1")));
    }
    Ok(c.min(1.0))
}

/// Quantum correlation coefficient, in `[0, 1]`.
pub fn qcc(q1: &Qmf, q2: &Qmf) -> Result<f64> {
    let cross = inner_product(q1, q2)?;
    correlation_from_parts(cross, inner_product(q1, q1)?, inner_product(q2, q2)?)
}

/// Quantum conflict indicator, `1 - QCC`.
pub fn qci(q1: &Qmf, q2: &Qmf) -> Result<f64> {
    Ok(1.0 - qcc(q1, q2)?)
}

/// QCI between two singleton-only dense vectors in O(n).
pub fn singleton_qci(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    let cross = singleton_inner_product(a, b)?;
    let c = correlation_from_parts(cross, singleton_inner_product(a, a)?, singleton_inner_product(b, b)?)?;
    Ok(1.0 - c)
}

/// Dense symmetric matrix of pairwise conflict values with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictMatrix {
    order: usize,
    values: Vec<f64>,
}

impl ConflictMatrix {
    /// Evaluate `f` on every unordered pair `i < j`; cells are independent
    /// and computed in parallel.
    pub fn from_pairwise<T, F>(items: &[T], f: F) -> Result<Self>
    where
        T: Sync,
        F: Fn(&T, &T) -> Result<f64> + Sync,
    {
        let n = items.len();
        if n < 2 {
            return Err(Error::TooFew { needed: 2, got: n });
        }
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let cells: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| f(&items[i], &items[j]))
            .collect::<Result<_>>()?;
        let mut values = vec![0.0; n * n];
        for (&(i, j), v) in pairs.iter().zip(cells) {
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
        Ok(Self { order: n, values })
    }

    /// Build from a full row-major matrix, checking shape, symmetry and the
    /// zero diagonal.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFew { needed: 2, got: n });
        }
        let mut values = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            values.extend_from_slice(r);
        }
        for i in 0..n {
            if values[i * n + i].abs() > 1e-9 {
                return Err(Error::Inconsistent(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if (values[i * n + j] - values[j * n + i]).abs() > 1e-12 {
                    return Err(Error::Inconsistent(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { order: n, values })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.order..(i + 1) * self.order]
    }
}

/// Pairwise QCI matrix of at least two QMFs on one frame.
pub fn qci_matrix(qms: &[Qmf]) -> Result<ConflictMatrix> {
    if let Some(first) = qms.first() {
        for q in &qms[1..] {
            first.ensure_same_frame(q)?;
        }
    }
    ConflictMatrix::from_pairwise(qms, qci)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;
    use std::sync::Arc;

    const A1: FocalSet = FocalSet(0b01);
    const A2: FocalSet = FocalSet(0b10);
    const A12: FocalSet = FocalSet(0b11);

    fn frame2() -> Arc<Frame> {
        Arc::new(Frame::numbered(2).unwrap())
    }

    fn q(entries: &[(FocalSet, Complex64)]) -> Qmf {
        Qmf::new(frame2(), entries.iter().copied()).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn phase_weight_values() {
        assert_eq!(phase_weight(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(phase_weight(FRAC_PI_2).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(phase_weight(-PI / 3.0).unwrap(), 0.75, epsilon = 1e-15);
        assert!(matches!(phase_weight(4.0), Err(Error::Domain(_))));
    }

    #[test]
    fn weighted_product_matches_phase_weight() {
        let a = Complex64::from_polar(0.8, 0.3);
        let b = Complex64::from_polar(0.5, 1.2);
        let direct = a.conj() * b * phase_weight(0.3 - 1.2).unwrap();
        let fast = weighted_product(a, b);
        assert_abs_diff_eq!((direct - fast).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inner_product_examples() {
        let h = re(0.5f64.sqrt());
        let u = q(&[(A1, h), (A2, h)]);
        let ip = inner_product(&u, &u).unwrap();
        assert_abs_diff_eq!(ip.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-15);

        let ip = inner_product(&q(&[(A1, re(1.0))]), &q(&[(A2, re(1.0))])).unwrap();
        assert_eq!(ip, Complex64::new(0.0, 0.0));

        let rotated = q(&[(A1, Complex64::new(0.0, 1.0))]);
        let ip = inner_product(&rotated, &q(&[(A1, re(1.0))])).unwrap();
        assert_abs_diff_eq!(ip.norm(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn norm_examples() {
        let h = re(0.5f64.sqrt());
        assert_abs_diff_eq!(qmf_norm(&q(&[(A1, h), (A2, h)])), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(qmf_norm(&q(&[(A12, re(1.0))])), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(qmf_norm(&q(&[(A1, h), (A12, h)])), 1.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn qcc_examples() {
        let h = re(0.5f64.sqrt());
        let u = q(&[(A1, h), (A12, h)]);
        assert_abs_diff_eq!(qcc(&u, &u).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(qcc(&q(&[(A2, re(1.0))]), &q(&[(A1, re(1.0))])).unwrap(), 0.0);
        // |<.|.>| = 1/2 from the Jaccard index, so (1/2)^4.
        assert_abs_diff_eq!(
            qcc(&q(&[(A12, re(1.0))]), &q(&[(A1, re(1.0))])).unwrap(),
            0.0625,
            epsilon = 1e-15
        );
    }

    #[test]
    fn qci_examples() {
        let h = re(0.5f64.sqrt());
        let u = q(&[(A1, h), (A2, h)]);
        assert_abs_diff_eq!(qci(&u, &u).unwrap(), 0.0, epsilon = 1e-12);

        let q1 = q(&[(A1, re(1.0)), (A2, re(0.0))]);
        let q2 = q(&[(A1, re(0.0)), (A12, re(1.0))]);
        assert_abs_diff_eq!(qci(&q1, &q2).unwrap(), 0.9375, epsilon = 1e-12);

        assert_eq!(qci(&q(&[(A1, re(1.0))]), &q(&[(A2, re(1.0))])).unwrap(), 1.0);
    }

    #[test]
    fn frame_mismatch() {
        let other = Arc::new(Frame::new(["x", "y"]).unwrap());
        let a = q(&[(A1, re(1.0))]);
        let b = Qmf::new(other, [(A1, re(1.0))]).unwrap();
        assert!(matches!(qci(&a, &b), Err(Error::FrameMismatch)));
    }

    #[test]
    fn matrix_examples() {
        let u = q(&[(A1, re(1.0))]);
        let m = qci_matrix(&[u.clone(), u.clone(), u.clone()]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(m.get(i, j), 0.0, epsilon = 1e-12);
            }
        }
        let m = qci_matrix(&[q(&[(A1, re(1.0))]), q(&[(A2, re(1.0))])]).unwrap();
        assert_eq!(m.row(0), &[0.0, 1.0]);
        assert_eq!(m.row(1), &[1.0, 0.0]);

        let m = qci_matrix(&[q(&[(A1, re(1.0))]), q(&[(A12, re(1.0))])]).unwrap();
        assert_abs_diff_eq!(m.get(0, 1), 0.9375, epsilon = 1e-15);
        assert!(matches!(qci_matrix(&[u]), Err(Error::TooFew { .. })));
    }

    #[test]
    fn from_rows_checks_shape() {
        assert!(ConflictMatrix::from_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).is_ok());
        assert!(ConflictMatrix::from_rows(&[vec![0.0, 0.5], vec![0.4, 0.0]]).is_err());
        assert!(ConflictMatrix::from_rows(&[vec![0.1, 0.5], vec![0.5, 0.0]]).is_err());
    }

    #[test]
    fn singleton_path_agrees_with_double_sum() {
        let a: Vec<Complex64> = (0..10).map(|i| Complex64::from_polar(0.1 + 0.05 * i as f64, 0.13 * i as f64)).collect();
        let b: Vec<Complex64> = (0..10).map(|i| Complex64::from_polar(0.7 - 0.04 * i as f64, 1.5 - 0.11 * i as f64)).collect();
        let fa: Vec<_> = a.iter().enumerate().map(|(i, z)| (FocalSet::singleton(i), *z)).collect();
        let fb: Vec<_> = b.iter().enumerate().map(|(i, z)| (FocalSet::singleton(i), *z)).collect();
        let slow = focal_inner_product(&fa, &fb);
        let fast = singleton_inner_product(&a, &b).unwrap();
        assert_abs_diff_eq!((slow - fast).norm(), 0.0, epsilon = 1e-14);
    }
}
