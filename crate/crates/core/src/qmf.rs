//! Quantum mass functions: complex amplitudes on the non-empty subsets of a
//! frame, with squared magnitudes summing to one.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};

/// Tolerance on Σ|qm(A)|² = 1 (and on classical mass sums at construction).
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Components closer to zero than this are treated as zero rather than
/// rejected as negative.
const SIGN_SLACK: f64 = 1e-12;

/// A first-quadrant complex amplitude: `re >= 0`, `im >= 0`, so the phase
/// lies in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Amplitude(Complex64);

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude(Complex64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        let a = Self::unchecked(re, im)?;
        if a.norm_sqr() > 1.0 + SUM_TOLERANCE {
            return Err(Error::AmplitudeTooLarge(a.norm_sqr()));
        }
        Ok(a)
    }

    /// Magnitude `sqrt(psi)` and phase `theta`, the polar form used in the
    /// literature.
    pub fn from_polar(magnitude: f64, phase: f64) -> Result<Self> {
        let z = Complex64::from_polar(magnitude, phase);
        Self::new(z.re, z.im)
    }

    /// Sign checks only; the magnitude may exceed one (raw, pre-normalization
    /// input).
    fn unchecked(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || re < -SIGN_SLACK || im < -SIGN_SLACK {
            return Err(Error::NegativeComponent { re, im });
        }
        Ok(Amplitude(Complex64::new(re.max(0.0), im.max(0.0))))
    }

    /// Rotate `z` into the first quadrant keeping its magnitude: phases above
    /// pi/2 saturate at pi/2, negative phases at 0.
    pub fn clamp_phase(z: Complex64) -> Self {
        let (r, theta) = z.to_polar();
        if r == 0.0 {
            return Self::ZERO;
        }
        if (0.0..=FRAC_PI_2).contains(&theta) {
            return Amplitude(Complex64::new(z.re.max(0.0), z.im.max(0.0)));
        }
        let theta = if theta > FRAC_PI_2 { FRAC_PI_2 } else { 0.0 };
        let c = Complex64::from_polar(r, theta);
        Amplitude(Complex64::new(c.re.max(0.0), c.im.max(0.0)))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn norm_sqr(self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn phase(self) -> f64 {
        self.0.im.atan2(self.0.re)
    }
}

impl From<Amplitude> for Complex64 {
    fn from(a: Amplitude) -> Self {
        a.0
    }
}

/// A quantum mass function over a shared frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Qmf {
    frame: Arc<Frame>,
    entries: BTreeMap<FocalSet, Amplitude>,
}

/// Build a QMF from raw `(focal set, amplitude)` pairs.
///
/// With `normalize` off the squared magnitudes must already sum to one; with
/// it on every amplitude is divided by the root of the total (phases kept).
pub fn make_qmf<I>(frame: Arc<Frame>, raw: I, normalize: bool) -> Result<Qmf>
where
    I: IntoIterator<Item = (FocalSet, Complex64)>,
{
    let mut entries = BTreeMap::new();
    for (set, z) in raw {
        if set.is_empty() {
            if z.norm_sqr() != 0.0 {
                return Err(Error::EmptyFocal);
            }
            continue;
        }
        if !frame.contains(set) {
            return Err(Error::FocalOutOfFrame(set.bits()));
        }
        let a = Amplitude::unchecked(z.re, z.im)?;
        if entries.insert(set, a).is_some() {
            return Err(Error::DuplicateFocal(set.bits()));
        }
    }
    let total: f64 = entries.values().map(|a| a.norm_sqr()).sum();
    if normalize {
        if total == 0.0 {
            return Err(Error::ZeroTotal);
        }
        let scale = total.sqrt().recip();
        for a in entries.values_mut() {
            *a = Amplitude(a.0 * scale);
        }
    } else {
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        if let Some(a) = entries.values().find(|a| a.norm_sqr() > 1.0 + SUM_TOLERANCE) {
            return Err(Error::AmplitudeTooLarge(a.norm_sqr()));
        }
    }
    Ok(Qmf { frame, entries })
}

impl Qmf {
    /// Strict constructor: amplitudes must already be normalized.
    pub fn new<I>(frame: Arc<Frame>, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Complex64)>,
    {
        make_qmf(frame, raw, false)
    }

    /// Rescaling constructor.
    pub fn normalized<I>(frame: Arc<Frame>, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Complex64)>,
    {
        make_qmf(frame, raw, true)
    }

    /// Used by the combination and discounting rules: amplitudes are pulled
    /// back into the first quadrant, exact zeros dropped, then normalized.
    pub(crate) fn from_combined(
        frame: Arc<Frame>,
        raw: impl IntoIterator<Item = (FocalSet, Complex64)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut total = 0.0;
        for (set, z) in raw {
            if z.norm_sqr() == 0.0 {
                continue;
            }
            let a = Amplitude::clamp_phase(z);
            total += a.norm_sqr();
            entries.insert(set, a);
        }
        if total == 0.0 {
            return Err(Error::ZeroTotal);
        }
        let scale = total.sqrt().recip();
        for a in entries.values_mut() {
            *a = Amplitude(a.0 * scale);
        }
        let q = Qmf { frame, entries };
        q.check_invariants()?;
        Ok(q)
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn same_frame(&self, other: &Qmf) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame
    }

    pub(crate) fn ensure_same_frame(&self, other: &Qmf) -> Result<()> {
        if self.same_frame(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Amplitude of `set`, zero when it is not a focal set.
    pub fn get(&self, set: FocalSet) -> Complex64 {
        self.entries.get(&set).map_or(Complex64::new(0.0, 0.0), |a| a.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FocalSet, Amplitude)> + '_ {
        self.entries.iter().map(|(s, a)| (*s, *a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn focal_pairs(&self) -> Vec<(FocalSet, Complex64)> {
        self.entries.iter().map(|(s, a)| (*s, a.0)).collect()
    }

    /// Σ |qm(A)|².
    pub fn total_squared(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let total = self.total_squared();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        Ok(())
    }

    /// Project to a classical mass function, m(A) = |qm(A)|².
    pub fn squared_mass(&self) -> ClassicalMass {
        ClassicalMass {
            frame: self.frame.clone(),
            entries: self.entries.iter().map(|(s, a)| (*s, a.norm_sqr())).collect(),
        }
    }

    /// Pignistic probabilities over the atoms computed on squared magnitudes.
    pub fn pignistic(&self) -> Vec<f64> {
        betp(self.frame.len(), self.entries.iter().map(|(s, a)| (*s, a.norm_sqr())))
    }

    /// True iff every focal set is a singleton.
    pub fn restrict_to_singletons(&self) -> bool {
        self.entries.keys().all(|s| s.is_singleton())
    }
}

fn betp(n: usize, masses: impl Iterator<Item = (FocalSet, f64)>) -> Vec<f64> {
    let mut p = vec![0.0; n];
    for (set, m) in masses {
        let share = m / f64::from(set.len());
        for i in set.atoms() {
            p[i] += share;
        }
    }
    p
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// A classical (real-valued) mass function.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMass {
    frame: Arc<Frame>,
    entries: BTreeMap<FocalSet, f64>,
}

impl ClassicalMass {
    pub fn new<I>(frame: Arc<Frame>, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (set, m) in raw {
            if !(0.0..=1.0 + SUM_TOLERANCE).contains(&m) || !m.is_finite() {
                return Err(Error::MassOutOfRange(m));
            }
            if set.is_empty() {
                if m != 0.0 {
                    return Err(Error::EmptyFocal);
                }
                continue;
            }
            if !frame.contains(set) {
                return Err(Error::FocalOutOfFrame(set.bits()));
            }
            if entries.insert(set, m).is_some() {
                return Err(Error::DuplicateFocal(set.bits()));
            }
        }
        let total: f64 = entries.values().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::MassNotNormalized(total));
        }
        Ok(Self { frame, entries })
    }

    /// Output of the combination rules: exact zeros dropped, total rescaled.
    pub(crate) fn from_combined(
        frame: Arc<Frame>,
        raw: impl IntoIterator<Item = (FocalSet, f64)>,
    ) -> Result<Self> {
        let entries: BTreeMap<FocalSet, f64> = raw.into_iter().filter(|(_, m)| *m != 0.0).collect();
        let total: f64 = entries.values().sum();
        if total <= 0.0 {
            return Err(Error::TotalConflict);
        }
        Ok(Self {
            frame,
            entries: entries.into_iter().map(|(s, m)| (s, m / total)).collect(),
        })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub(crate) fn ensure_same_frame(&self, other: &ClassicalMass) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn get(&self, set: FocalSet) -> f64 {
        self.entries.get(&set).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.entries.iter().map(|(s, m)| (*s, *m))
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Rescale so the entries sum to one.
    pub fn renormalized(&self) -> ClassicalMass {
        let t = self.total();
        ClassicalMass {
            frame: self.frame.clone(),
            entries: self.entries.iter().map(|(s, m)| (*s, m / t)).collect(),
        }
    }

    pub fn pignistic(&self) -> Vec<f64> {
        betp(self.frame.len(), self.iter())
    }
}
