//! How the number of retained low-variance features affects OOD ranking
//! quality on synthetic data.

use qdst::ood::{keep_count_sweep, Orientation, SyntheticConfig, SyntheticOod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = SyntheticOod::generate(&SyntheticConfig { ood_shift: 6.0, ..Default::default() })?;
    let counts = [4, 8, 16, 24, 32, 40, 48, 56, 64];
    let rows = keep_count_sweep(&data.classes, &data.test, &counts, None, Orientation::OodHigh)?;
    println!("{:>5} {:>8} {:>8}", "keep", "AUC", "FPR95");
    for r in rows {
        let m = &r.metrics[0];
        println!("{:>5} {:>8.4} {:>8.4}", r.keep_count, m.auc, m.fpr95);
    }
    Ok(())
}
