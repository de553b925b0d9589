//! Quantum mass functions whose focal sets are singletons plus, optionally,
//! the whole frame, over any number of atoms.
//!
//! This family is closed under discounting and the quantum Dempster rule:
//! `{i} ∩ {i} = {i}`, `{i} ∩ Θ = {i}`, `Θ ∩ Θ = Θ` and distinct singletons are
//! disjoint. That keeps every operation linear in the number of atoms, which
//! matters for feature-level evidence with thousands of atoms.

use std::sync::Arc;

use num_complex::Complex64;

use crate::conflict::correlation_from_parts;
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::qmf::{Amplitude, Qmf, SUM_TOLERANCE};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SingletonQmf {
    atoms: Vec<Complex64>,
    frame_mass: Complex64,
}

#[inline]
fn weighted(a: Complex64, b: Complex64) -> Complex64 {
    let p = a.conj() * b;
    let r = a.norm() * b.norm();
    if r == 0.0 {
        return ZERO;
    }
    p * ((p.re / r + 1.0) / 2.0)
}

impl SingletonQmf {
    /// Bayesian evidence: one amplitude per atom, rescaled to unit squared
    /// magnitude.
    pub fn from_amplitudes(atoms: Vec<Complex64>) -> Result<Self> {
        Self::from_parts(atoms, ZERO)
    }

    /// Singleton amplitudes plus an amplitude on the whole frame, rescaled.
    pub fn from_parts(atoms: Vec<Complex64>, frame_mass: Complex64) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidFrame("no atoms".into()));
        }
        for z in atoms.iter().chain(std::iter::once(&frame_mass)) {
            if !z.re.is_finite() || !z.im.is_finite() || z.re < -1e-12 || z.im < -1e-12 {
                return Err(Error::NegativeComponent { re: z.re, im: z.im });
            }
        }
        let mut s = if atoms.len() == 1 {
            // the single atom is the frame
            SingletonQmf { atoms: vec![atoms[0] + frame_mass], frame_mass: ZERO }
        } else {
            SingletonQmf { atoms, frame_mass }
        };
        s.clamp_and_normalize()?;
        Ok(s)
    }

    fn clamp_and_normalize(&mut self) -> Result<()> {
        let mut total = 0.0;
        for z in self.atoms.iter_mut().chain(std::iter::once(&mut self.frame_mass)) {
            *z = Amplitude::clamp_phase(*z).value();
            total += z.norm_sqr();
        }
        if total == 0.0 {
            return Err(Error::ZeroTotal);
        }
        let scale = total.sqrt().recip();
        for z in self.atoms.iter_mut().chain(std::iter::once(&mut self.frame_mass)) {
            *z *= scale;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn frame_mass(&self) -> Complex64 {
        self.frame_mass
    }

    fn ensure_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(())
    }

    /// Jaccard index between a singleton and the whole frame.
    fn frame_overlap(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Phase-weighted inner product; the singleton/frame cross terms carry a
    /// Jaccard weight of `1/n`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.ensure_len(other)?;
        let j = self.frame_overlap();
        let mut acc = ZERO;
        for (a, b) in self.atoms.iter().zip(&other.atoms) {
            acc += weighted(*a, *b);
            // grouped so that swapping the operands conjugates every step
            acc += (weighted(*a, other.frame_mass) + weighted(self.frame_mass, *b)) * j;
        }
        acc += weighted(self.frame_mass, other.frame_mass);
        Ok(acc)
    }

    pub fn qci(&self, other: &Self) -> Result<f64> {
        let cross = self.inner_product(other)?;
        let c = correlation_from_parts(cross, self.inner_product(self)?, other.inner_product(other)?)?;
        Ok(1.0 - c)
    }

    /// Scale singleton amplitudes by `d` and move the complement onto the
    /// frame, then renormalize.
    pub fn discount(&self, d: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::InvalidDiscount(d));
        }
        if self.len() == 1 {
            return Ok(self.clone());
        }
        let moved: Complex64 = self.atoms.iter().map(|z| z * (1.0 - d)).sum();
        let mut s = SingletonQmf {
            atoms: self.atoms.iter().map(|z| z * d).collect(),
            frame_mass: self.frame_mass + moved,
        };
        s.clamp_and_normalize()?;
        Ok(s)
    }

    /// Quantum Dempster combination within the family.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        self.ensure_len(other)?;
        if self.len() == 1 {
            let mut s = SingletonQmf { atoms: vec![self.atoms[0] * other.atoms[0]], frame_mass: ZERO };
            s.clamp_and_normalize().map_err(|_| Error::TotalConflict)?;
            return Ok(s);
        }
        let atoms = self
            .atoms
            .iter()
            .zip(&other.atoms)
            .map(|(a, b)| a * b + a * other.frame_mass + self.frame_mass * b)
            .collect();
        let mut s = SingletonQmf { atoms, frame_mass: self.frame_mass * other.frame_mass };
        s.clamp_and_normalize().map_err(|e| match e {
            Error::ZeroTotal => Error::TotalConflict,
            e => e,
        })?;
        Ok(s)
    }

    /// Squared magnitudes split evenly: frame mass shared across atoms.
    pub fn pignistic(&self) -> Vec<f64> {
        let share = self.frame_mass.norm_sqr() / self.len() as f64;
        self.atoms.iter().map(|z| z.norm_sqr() + share).collect()
    }

    /// Equivalent general QMF, for frames small enough to have one.
    pub fn to_qmf(&self, frame: Arc<Frame>) -> Result<Qmf> {
        if frame.len() != self.len() {
            return Err(Error::FrameMismatch);
        }
        let mut raw: Vec<(FocalSet, Complex64)> = Vec::new();
        if self.len() == 1 {
            raw.push((frame.full(), self.atoms[0]));
        } else {
            raw.extend(
                self.atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm_sqr() > 0.0)
                    .map(|(i, z)| (FocalSet::singleton(i), *z)),
            );
            if self.frame_mass.norm_sqr() > 0.0 {
                raw.push((frame.full(), self.frame_mass));
            }
        }
        Qmf::new(frame, raw)
    }

    /// Inverse of [`SingletonQmf::to_qmf`]; fails when a focal set is neither
    /// a singleton nor the whole frame.
    pub fn from_qmf(q: &Qmf) -> Result<Self> {
        let n = q.frame().len();
        let full = q.frame().full();
        let mut atoms = vec![ZERO; n];
        let mut frame_mass = ZERO;
        for (s, a) in q.iter() {
            if s == full {
                frame_mass = a.value();
            } else if s.is_singleton() {
                atoms[s.atoms().next().unwrap_or(0)] = a.value();
            } else {
                return Err(Error::InvalidFrame(format!("focal set {s} is neither a singleton nor the frame")));
            }
        }
        let total: f64 = atoms.iter().map(|z| z.norm_sqr()).sum::<f64>() + frame_mass.norm_sqr();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        Ok(SingletonQmf { atoms, frame_mass })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combine::drc_qm;
    use crate::conflict::qci;
    use crate::fusion::discount_qmf;
    use approx::assert_abs_diff_eq;

    fn sample(seed: u32, n: usize, with_frame: bool) -> SingletonQmf {
        let atoms = (0..n)
            .map(|i| {
                let t = (seed as f64 + 1.0) * (i as f64 + 1.0);
                Complex64::from_polar(0.2 + (t * 0.37).sin().abs(), (t * 0.61).sin().abs() * 1.5)
            })
            .collect();
        let fm = if with_frame { Complex64::from_polar(0.4, 0.3 * seed as f64 % 1.5) } else { ZERO };
        SingletonQmf::from_parts(atoms, fm).unwrap()
    }

    fn assert_qmf_eq(a: &Qmf, b: &Qmf) {
        for s in a.frame().subsets() {
            assert_abs_diff_eq!((a.get(s) - b.get(s)).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn agrees_with_general_qmf_operations() {
        for n in 2..=5 {
            let frame = Arc::new(Frame::numbered(n).unwrap());
            for seed in 0..4 {
                let a = sample(seed, n, seed % 2 == 0);
                let b = sample(seed + 7, n, true);
                let (qa, qb) = (a.to_qmf(frame.clone()).unwrap(), b.to_qmf(frame.clone()).unwrap());

                assert_abs_diff_eq!(a.qci(&b).unwrap(), qci(&qa, &qb).unwrap(), epsilon = 1e-12);

                let c = a.combine(&b).unwrap().to_qmf(frame.clone()).unwrap();
                assert_qmf_eq(&c, &drc_qm(&qa, &qb).unwrap());

                for d in [0.0, 0.3, 1.0] {
                    let x = a.discount(d).unwrap().to_qmf(frame.clone()).unwrap();
                    assert_qmf_eq(&x, &discount_qmf(&qa, d).unwrap());
                }

                let p = a.pignistic();
                for (x, y) in p.iter().zip(qa.pignistic()) {
                    assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
                }
                assert_eq!(SingletonQmf::from_qmf(&qa).unwrap(), a);
            }
        }
    }

    #[test]
    fn rejects_negative_and_zero() {
        assert!(SingletonQmf::from_amplitudes(vec![Complex64::new(-1.0, 0.0)]).is_err());
        assert!(matches!(
            SingletonQmf::from_amplitudes(vec![ZERO, ZERO]),
            Err(Error::ZeroTotal)
        ));
    }

    #[test]
    fn disjoint_singletons_conflict_fully() {
        let a = SingletonQmf::from_amplitudes(vec![Complex64::new(1.0, 0.0), ZERO]).unwrap();
        let b = SingletonQmf::from_amplitudes(vec![ZERO, Complex64::new(1.0, 0.0)]).unwrap();
        assert_eq!(a.qci(&b).unwrap(), 1.0);
        assert!(matches!(a.combine(&b), Err(Error::TotalConflict)));
    }
}
