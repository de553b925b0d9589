//! Parameter sweeps over small two-focal-element QMF pairs, used to chart
//! how QCC and QCI respond to support, phase, focal-set overlap and frame
//! refinement.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_complex::Complex64;

use crate::conflict::{qcc, qci};
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::qmf::Qmf;
use crate::report::{num, CsvTable};

const A1: FocalSet = FocalSet(0b01);
const A2: FocalSet = FocalSet(0b10);
const A12: FocalSet = FocalSet(0b11);

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn check_resolution(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::TooFew { needed: 2, got: r });
    }
    Ok(())
}

fn frame(n: usize) -> Arc<Frame> {
    Arc::new(Frame::numbered(n).expect("small frame"))
}

/// The second focal element shared by the swept pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `{a2}`: disjoint from `{a1}`.
    Disjoint,
    /// `{a1, a2}`: overlaps `{a1}`.
    Overlapping,
}

impl Branch {
    fn set(self) -> FocalSet {
        match self {
            Branch::Disjoint => A2,
            Branch::Overlapping => A12,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Disjoint => "a2",
            Branch::Overlapping => "a1|a2",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PsiPhasePoint {
    pub branch: Branch,
    pub psi: f64,
    pub theta: f64,
    pub qcc: f64,
    pub qci: f64,
}

/// `qm1 = {a1: √ψ, ϑ: √(1-ψ)·e^{iθ}}` against `qm2 = {a1: √(1-ψ), ϑ: √ψ}` for
/// ψ ∈ [0, 1], θ ∈ [0, π/2] and both choices of ϑ.
pub fn psi_phase_sweep(resolution: usize) -> Result<Vec<PsiPhasePoint>> {
    check_resolution(resolution)?;
    let f = frame(2);
    let mut out = Vec::with_capacity(2 * resolution * resolution);
    for branch in [Branch::Disjoint, Branch::Overlapping] {
        let v = branch.set();
        for &psi in &linspace(0.0, 1.0, resolution) {
            for &theta in &linspace(0.0, FRAC_PI_2, resolution) {
                let q1 = Qmf::new(
                    f.clone(),
                    [(A1, Complex64::new(psi.sqrt(), 0.0)), (v, Complex64::from_polar((1.0 - psi).sqrt(), theta))],
                )?;
                let q2 = Qmf::new(
                    f.clone(),
                    [(A1, Complex64::new((1.0 - psi).sqrt(), 0.0)), (v, Complex64::new(psi.sqrt(), 0.0))],
                )?;
                let c = qcc(&q1, &q2)?;
                out.push(PsiPhasePoint { branch, psi, theta, qcc: c, qci: 1.0 - c });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct XyPoint {
    pub case: u8,
    pub x: f64,
    pub y: f64,
    pub qci: f64,
}

/// `qm1 = {a1: (x+yi)/d, ϑ1: (1-x+yi)/d}`, `qm2 = {a1: (1-x+yi)/d, ϑ2: (x+yi)/d}`
/// with `d = sqrt(x² + 2y² + (1-x)²)`. Case 1: ϑ1 = ϑ2 = {a2}; case 2:
/// ϑ1 = {a2}, ϑ2 = {a1,a2}; case 3: ϑ1 = ϑ2 = {a1,a2}.
pub fn xy_pair(case: u8, x: f64, y: f64) -> Result<(Qmf, Qmf)> {
    let (v1, v2) = match case {
        1 => (A2, A2),
        2 => (A2, A12),
        3 => (A12, A12),
        _ => return Err(Error::InvalidFrame(format!("unknown case {case}"))),
    };
    let d = (x * x + 2.0 * y * y + (1.0 - x) * (1.0 - x)).sqrt();
    let f = frame(2);
    let lo = Complex64::new(x, y) / d;
    let hi = Complex64::new(1.0 - x, y) / d;
    Ok((Qmf::new(f.clone(), [(A1, lo), (v1, hi)])?, Qmf::new(f, [(A1, hi), (v2, lo)])?))
}

pub fn xy_sweep(resolution: usize) -> Result<Vec<XyPoint>> {
    check_resolution(resolution)?;
    let mut out = Vec::new();
    for case in 1..=3 {
        for &x in &linspace(0.0, 1.0, resolution) {
            for &y in &linspace(0.0, 1.0, resolution) {
                let (q1, q2) = xy_pair(case, x, y)?;
                out.push(XyPoint { case, x, y, qci: qci(&q1, &q2)? });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct RefinementPoint {
    pub atoms: usize,
    pub psi1: f64,
    pub psi2: f64,
    pub theta12: f64,
    pub qci: f64,
    pub qci_swapped: f64,
}

/// Support levels of the second source in the refinement sweep.
pub const REFINEMENT_PSI2: [f64; 4] = [0.3, 0.5, 0.7, 1.0];

/// `qm1 = {a1: √ψ1, a2: √(1-ψ1)·e^{iθ12}}`, `qm2 = {a1: √ψ2, a2: √(1-ψ2)}` on a
/// 2-atom frame and on a 3-atom refinement where `a3` carries nothing.
pub fn refinement_sweep(resolution: usize) -> Result<Vec<RefinementPoint>> {
    check_resolution(resolution)?;
    let mut out = Vec::new();
    for atoms in [2usize, 3] {
        let f = frame(atoms);
        for &psi2 in &REFINEMENT_PSI2 {
            for &psi1 in &linspace(0.0, 1.0, resolution) {
                for &theta12 in &linspace(0.0, FRAC_PI_2, resolution) {
                    let q1 = Qmf::new(
                        f.clone(),
                        [
                            (A1, Complex64::new(psi1.sqrt(), 0.0)),
                            (A2, Complex64::from_polar((1.0 - psi1).sqrt(), theta12)),
                        ],
                    )?;
                    let q2 = Qmf::new(
                        f.clone(),
                        [(A1, Complex64::new(psi2.sqrt(), 0.0)), (A2, Complex64::new((1.0 - psi2).sqrt(), 0.0))],
                    )?;
                    out.push(RefinementPoint {
                        atoms,
                        psi1,
                        psi2,
                        theta12,
                        qci: qci(&q1, &q2)?,
                        qci_swapped: qci(&q2, &q1)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Imaginary parts swept by [`nested_focal_sweep`].
pub const NESTED_Y: [f64; 4] = [0.0, 0.1, 0.2, 0.3];

/// `qm1 = {a1: (0.1+yi)/s, ϑω: (0.9+yi)/s}`, `qm2 = {a1: (0.9+yi)/s, ϑω: (0.1+yi)/s}`
/// with `s = sqrt(0.82 + 2y²)` and `ϑω = {a1, …, aω}` on a 10-atom frame.
///
/// At ω = 1 the two focal elements coincide; their amplitudes are summed and
/// the result renormalized, which makes both sources identical.
pub fn nested_pair(omega: usize, y: f64) -> Result<(Qmf, Qmf)> {
    if !(1..=10).contains(&omega) {
        return Err(Error::InvalidFrame(format!("omega {omega} outside 1..=10")));
    }
    let f = frame(10);
    let s = (0.82 + 2.0 * y * y).sqrt();
    let lo = Complex64::new(0.1, y) / s;
    let hi = Complex64::new(0.9, y) / s;
    let v = FocalSet::full(omega);
    if omega == 1 {
        let merged = [(A1, lo + hi)];
        return Ok((Qmf::normalized(f.clone(), merged)?, Qmf::normalized(f, merged)?));
    }
    Ok((Qmf::new(f.clone(), [(A1, lo), (v, hi)])?, Qmf::new(f, [(A1, hi), (v, lo)])?))
}

/// Rows are ω = 1..=10, columns follow [`NESTED_Y`].
pub fn nested_focal_sweep() -> Result<Vec<[f64; 4]>> {
    (1..=10)
        .map(|omega| {
            let mut row = [0.0; 4];
            for (k, &y) in NESTED_Y.iter().enumerate() {
                let (q1, q2) = nested_pair(omega, y)?;
                row[k] = qci(&q1, &q2)?;
            }
            Ok(row)
        })
        .collect()
}

/// Render one of the four sweeps as a CSV table.
pub fn sweep_table(which: u8, resolution: usize) -> Result<CsvTable> {
    let table = match which {
        1 => {
            let mut t = CsvTable::new(["branch", "psi", "theta", "qcc", "qci"]);
            for p in psi_phase_sweep(resolution)? {
                t.push(vec![p.branch.label().into(), num(p.psi), num(p.theta), num(p.qcc), num(p.qci)]);
            }
            t
        }
        2 => {
            let mut t = CsvTable::new(["case", "x", "y", "qci"]);
            for p in xy_sweep(resolution)? {
                t.push(vec![p.case.to_string(), num(p.x), num(p.y), num(p.qci)]);
            }
            t
        }
        3 => {
            let mut t = CsvTable::new(["atoms", "psi1", "psi2", "theta12", "qci", "qci_swapped"]);
            for p in refinement_sweep(resolution)? {
                t.push(vec![
                    p.atoms.to_string(),
                    num(p.psi1),
                    num(p.psi2),
                    num(p.theta12),
                    num(p.qci),
                    num(p.qci_swapped),
                ]);
            }
            t
        }
        4 => {
            let mut t = CsvTable::new(["omega", "y0", "y0.1", "y0.2", "y0.3"]);
            for (i, row) in nested_focal_sweep()?.iter().enumerate() {
                let mut r = vec![(i + 1).to_string()];
                r.extend(row.iter().map(|v| num(*v)));
                t.push(r);
            }
            t
        }
        _ => return Err(Error::InvalidFrame(format!("unknown sweep {which}, expected 1-4"))),
    };
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn psi_phase_maximum_at_half() {
        let grid = psi_phase_sweep(11).unwrap();
        assert_eq!(grid.len(), 2 * 121);
        for p in grid.iter().filter(|p| (p.psi - 0.5).abs() < 1e-12 && p.theta == 0.0) {
            assert_abs_diff_eq!(p.qcc, 1.0, epsilon = 1e-12);
        }
        // ψ = 0 with ϑ = {a2}: supports are disjoint
        for p in grid.iter().filter(|p| p.psi == 0.0 && p.branch == Branch::Disjoint) {
            assert_eq!(p.qcc, 0.0);
        }
    }

    #[test]
    fn overlapping_branch_never_below_disjoint() {
        let grid = psi_phase_sweep(11).unwrap();
        let (d, o) = grid.split_at(121);
        for (a, b) in d.iter().zip(o) {
            assert!(a.qcc <= b.qcc + 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn xy_case_two_corner() {
        let (q1, q2) = xy_pair(2, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(qci(&q1, &q2).unwrap(), 0.9375, epsilon = 1e-12);
        let (q1, q2) = xy_pair(2, 0.0, 0.0).unwrap();
        assert_eq!(qci(&q1, &q2).unwrap(), 1.0);
        let (q1, q2) = xy_pair(1, 0.5, 0.3).unwrap();
        assert_abs_diff_eq!(qci(&q1, &q2).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn refinement_grid_identical() {
        let grid = refinement_sweep(5).unwrap();
        let (two, three) = grid.split_at(grid.len() / 2);
        for (a, b) in two.iter().zip(three) {
            assert_eq!((a.atoms, b.atoms), (2, 3));
            assert_abs_diff_eq!(a.qci, b.qci, epsilon = 1e-12);
            assert_abs_diff_eq!(a.qci, a.qci_swapped, epsilon = 1e-12);
        }
    }

    #[test]
    fn nested_rows_increase_with_omega() {
        let rows = nested_focal_sweep().unwrap();
        for k in 0..4 {
            for w in rows.windows(2) {
                assert!(w[1][k] > w[0][k]);
            }
        }
    }

    #[test]
    fn table_shapes() {
        assert_eq!(sweep_table(1, 11).unwrap().rows().len(), 242);
        assert_eq!(sweep_table(4, 2).unwrap().rows().len(), 10);
        assert!(sweep_table(5, 11).is_err());
        assert!(sweep_table(1, 1).is_err());
    }
}
