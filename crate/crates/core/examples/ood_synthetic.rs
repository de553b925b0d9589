//! Fit class description spaces on synthetic Gaussian classes, score an ID/OOD
//! test mix with and without the logit score, and report AUC and FPR95.
//!
//! Pass a directory to also write the generated files (manifest, per-class
//! CSVs, test, logits and weights) for use with `qdst ood`.

use qdst::ood::{
    evaluate, fit, score, Decision, Orientation, Policy, ScoreRecord, SyntheticConfig, SyntheticOod,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = SyntheticOod::generate(&SyntheticConfig::default())?;
    if let Some(dir) = std::env::args().nth(1) {
        data.write(std::path::Path::new(&dir), None)?;
        println!("wrote synthetic files to {dir}");
    }
    let store = fit(&data.classes, None, Policy::default())?;
    for s in &store {
        println!(
            "class {}: {} of {} features kept, validation decisions in [{:.6}, {:.6}]",
            s.class_id,
            s.kept.len(),
            s.features,
            s.min_decision,
            s.domain
        );
    }

    let rows = score(&store, &data.test, Some((&data.logits, &data.weights, data.dml)), None)?;
    let flagged = rows.iter().filter(|r| r.decision == Decision::Ood).count();
    println!("{flagged} of {} test rows flagged OOD under the {} policy", rows.len(), Policy::default());

    let records: Vec<ScoreRecord> = rows
        .iter()
        .map(|r| ScoreRecord { score_c: r.score_c, score_d: r.score_d, composite: r.composite, truth: r.truth })
        .collect();
    for m in evaluate(&records, Orientation::OodHigh)? {
        println!("{:>10}: AUC {:.4}  FPR95 {:.4}", m.score, m.auc, m.fpr95);
    }
    Ok(())
}
