//! Correlation and conflict between pairs of quantum mass functions.

use std::sync::Arc;

use num_complex::Complex64;
use qdst::{qcc, qci, Frame, Qmf};

fn main() -> qdst::Result<()> {
    let frame = Arc::new(Frame::new(["a1", "a2"])?);
    let a1 = frame.set_of(&["a1"])?;
    let a2 = frame.set_of(&["a2"])?;
    let both = frame.full();

    let sure_a1 = Qmf::new(frame.clone(), [(a1, Complex64::new(1.0, 0.0))])?;
    let sure_a2 = Qmf::new(frame.clone(), [(a2, Complex64::new(1.0, 0.0))])?;
    println!("identical:           QCC {:.12}  QCI {:.12}", qcc(&sure_a1, &sure_a1)?, qci(&sure_a1, &sure_a1)?);
    println!("disjoint singletons: QCC {:.12}  QCI {:.12}", qcc(&sure_a1, &sure_a2)?, qci(&sure_a1, &sure_a2)?);

    // partial overlap: {a2} against {a1, a2}
    let vague = Qmf::new(frame.clone(), [(both, Complex64::new(1.0, 0.0))])?;
    println!("{{a2}} vs {{a1,a2}}:    QCI {:.12}", qci(&sure_a2, &vague)?);

    // phase alone creates conflict between equal magnitudes
    let h = 0.5f64.sqrt();
    let flat = Qmf::new(frame.clone(), [(a1, Complex64::new(h, 0.0)), (a2, Complex64::new(h, 0.0))])?;
    for deg in [0.0, 30.0, 60.0, 90.0] {
        let turned = Qmf::new(
            frame.clone(),
            [(a1, Complex64::new(h, 0.0)), (a2, Complex64::from_polar(h, f64::to_radians(deg)))],
        )?;
        println!("phase {deg:>4}°:         QCI {:.12}", qci(&flat, &turned)?);
    }
    Ok(())
}
