//! Conflict-weighted fusion keeps an outlier from flipping the decision that
//! the plain quantum Dempster rule would make.

use std::sync::Arc;

use num_complex::Complex64;
use qdst::fusion::combine_all;
use qdst::qmf::argmax;
use qdst::{fuse, FocalSet, Frame, Qmf};

fn main() -> qdst::Result<()> {
    let frame = Arc::new(Frame::new(["a1", "a2", "a3"])?);
    let q = |a: f64, b: f64, c: f64| {
        Qmf::normalized(
            frame.clone(),
            [(FocalSet::singleton(0), Complex64::new(a, 0.0)), (FocalSet::singleton(1), Complex64::new(b, 0.0)), (FocalSet::singleton(2), Complex64::new(c, 0.0))],
        )
    };
    let sources = vec![q(0.8, 0.5, 0.3)?, q(0.75, 0.55, 0.35)?, q(0.01, 0.99, 0.1)?];

    let report = fuse(&sources)?;
    println!("pairwise QCI:");
    for i in 0..report.matrix.order() {
        let row: Vec<String> = report.matrix.row(i).iter().map(|v| format!("{v:.4}")).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("support   {:?}", report.support);
    println!("discounts {:?}", report.discounts);

    let weighted = report.fused.pignistic();
    let plain = combine_all(&sources)?.pignistic();
    println!("weighted fusion: {weighted:.4?} -> {}", frame.atoms()[argmax(&weighted)]);
    println!("plain rule:      {plain:.4?} -> {}", frame.atoms()[argmax(&plain)]);
    Ok(())
}
