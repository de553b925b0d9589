//! The quantum Dempster rule next to the classical rules on the same evidence.

use std::sync::Arc;

use num_complex::Complex64;
use qdst::combine::drc_qm_with_diagnostics;
use qdst::{drc_classic, murphy_combine, pcr5, ClassicalMass, Frame, Qmf};

fn show(name: &str, frame: &Frame, m: &ClassicalMass) {
    let parts: Vec<String> = m.iter().map(|(s, v)| format!("{{{}}}: {v:.6}", frame.labels_of(s).join(","))).collect();
    println!("{name:>12}  {}", parts.join("  "));
}

fn main() -> qdst::Result<()> {
    let frame = Arc::new(Frame::new(["a", "b", "c"])?);
    let set = |labels: &[&str]| frame.set_of(labels);

    let q1 = Qmf::new(
        frame.clone(),
        [
            (set(&["a"])?, Complex64::from_polar(0.8f64.sqrt(), 0.1)),
            (set(&["b"])?, Complex64::from_polar(0.1f64.sqrt(), 0.4)),
            (frame.full(), Complex64::from_polar(0.1f64.sqrt(), 0.0)),
        ],
    )?;
    let q2 = Qmf::new(
        frame.clone(),
        [
            (set(&["b"])?, Complex64::from_polar(0.6f64.sqrt(), 0.2)),
            (set(&["a", "c"])?, Complex64::from_polar(0.4f64.sqrt(), 0.9)),
        ],
    )?;

    let (fused, diag) = drc_qm_with_diagnostics(&q1, &q2)?;
    println!("quantum rule: normalizer {:.6}, literal K {:.6}", diag.normalizer, diag.literal_k);
    for (s, a) in fused.iter() {
        println!("  {{{}}}: |a|² {:.6}  phase {:.4}", frame.labels_of(s).join(","), a.norm_sqr(), a.phase());
    }
    println!("  pignistic {:?}", fused.pignistic());

    let (m1, m2) = (q1.squared_mass(), q2.squared_mass());
    show("dempster", &frame, &drc_classic(&m1, &m2)?);
    show("murphy", &frame, &murphy_combine(&[m1.clone(), m2.clone()])?);
    show("pcr5", &frame, &pcr5(&m1, &m2)?);
    Ok(())
}
