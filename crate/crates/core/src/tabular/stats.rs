use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;

use super::Dataset;
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::qmf::Qmf;

/// Running moments of one attribute within one class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttributeStats {
    pub mean: f64,
    /// Sum of squared deviations from the mean.
    pub m2: f64,
    pub count: usize,
}

impl AttributeStats {
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut s = AttributeStats { mean: 0.0, m2: 0.0, count: 0 };
        for x in values {
            s = s.with(x);
        }
        s
    }

    /// Statistics after appending one more observation.
    pub fn with(self, x: f64) -> Self {
        let count = self.count + 1;
        let delta = x - self.mean;
        let mean = self.mean + delta / count as f64;
        AttributeStats { mean, m2: self.m2 + delta * (x - mean), count }
    }

    /// Sample standard deviation (n - 1 denominator).
    pub fn std(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        (self.m2.max(0.0) / (self.count - 1) as f64).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct ClassStatistics {
    pub frame: Arc<Frame>,
    /// `per_class[k][j]`: class k, attribute j.
    pub per_class: Vec<Vec<AttributeStats>>,
}

/// Per-class statistics over the rows `train` of `data`.
pub fn class_statistics(data: &Dataset, train: &[usize]) -> Result<ClassStatistics> {
    let frame = Arc::new(Frame::new(data.classes.clone())?);
    let d = data.attributes.len();
    let mut per_class = vec![vec![AttributeStats { mean: 0.0, m2: 0.0, count: 0 }; d]; data.classes.len()];
    for &i in train {
        let k = data.labels[i];
        for (s, &x) in per_class[k].iter_mut().zip(&data.rows[i]) {
            *s = s.with(x);
        }
    }
    for (k, attrs) in per_class.iter().enumerate() {
        let rows = attrs.first().map_or(0, |s| s.count);
        if rows < 2 {
            return Err(Error::DegenerateClass { class: data.classes[k].clone(), rows });
        }
    }
    Ok(ClassStatistics { frame, per_class })
}

impl ClassStatistics {
    pub fn attributes(&self) -> usize {
        self.per_class.first().map_or(0, Vec::len)
    }

    pub fn classes(&self) -> usize {
        self.per_class.len()
    }
}

/// Singleton-only QMF for one attribute of `instance`. Class k gets
/// `exp(-|σ' - σ|)·e^{i·min(|μ' - μ|, π/2)}`, where the primed statistics add
/// the instance to that class's training rows.
pub fn attribute_qmf(stats: &ClassStatistics, instance: &[f64], j: usize) -> Result<Qmf> {
    if j >= stats.attributes() || instance.len() != stats.attributes() {
        return Err(Error::DimensionMismatch { expected: stats.attributes(), got: instance.len().min(j) });
    }
    let x = instance[j];
    let amps = stats.per_class.iter().enumerate().map(|(k, attrs)| {
        let before = attrs[j];
        let after = before.with(x);
        let sigma_after = (after.m2.max(0.0) / before.count as f64).sqrt();
        let magnitude = (-(sigma_after - before.std()).abs()).exp();
        let phase = (after.mean - before.mean).abs().min(FRAC_PI_2);
        (FocalSet::singleton(k), Complex64::from_polar(magnitude, phase))
    });
    Qmf::normalized(stats.frame.clone(), amps.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn toy() -> Dataset {
        Dataset {
            attributes: vec!["x".into()],
            classes: vec!["a".into(), "b".into()],
            rows: vec![vec![0.0], vec![2.0], vec![10.0], vec![11.0], vec![12.0]],
            labels: vec![0, 0, 1, 1, 1],
        }
    }

    #[test]
    fn sample_moments() {
        let s = class_statistics(&toy(), &[0, 1, 2, 3, 4]).unwrap();
        assert_abs_diff_eq!(s.per_class[0][0].mean, 1.0);
        assert_abs_diff_eq!(s.per_class[0][0].std(), 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(s.per_class[1][0].std(), 1.0, epsilon = 1e-15);
        assert!(matches!(class_statistics(&toy(), &[0, 2, 3]), Err(Error::DegenerateClass { .. })));
    }

    #[test]
    fn appended_moments_match_direct() {
        let s = AttributeStats::from_values([1.0, 4.0, 9.0]).with(2.5);
        let direct = AttributeStats::from_values([1.0, 4.0, 9.0, 2.5]);
        assert_abs_diff_eq!(s.mean, direct.mean, epsilon = 1e-14);
        assert_abs_diff_eq!(s.m2, direct.m2, epsilon = 1e-12);
    }

    #[test]
    fn far_instance_favours_near_class() {
        let s = class_statistics(&toy(), &[0, 1, 2, 3, 4]).unwrap();
        let q = attribute_qmf(&s, &[1.0], 0).unwrap();
        let a = q.get(FocalSet::singleton(0));
        let b = q.get(FocalSet::singleton(1));
        assert!(a.norm_sqr() > b.norm_sqr());
        // instance at class a's mean: zero phase there, saturated phase for b
        assert_abs_diff_eq!(a.arg(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.arg(), FRAC_PI_2, epsilon = 1e-15);
        assert!(q.restrict_to_singletons());
    }
}
