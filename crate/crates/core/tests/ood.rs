use qdst::ood::{
    build_cdds, evaluate, fit, keep_count_sweep, read_store, score, write_store, ClassData, Decision, FeatureMatrix,
    Orientation, Policy, ScoreRecord, SyntheticConfig, SyntheticOod, TestSet, Truth,
};

fn small() -> SyntheticOod {
    SyntheticOod::generate(&SyntheticConfig { train: 60, valid: 20, test: 20, ood: 40, ..Default::default() }).unwrap()
}

#[test]
fn ood_rows_score_higher_than_id_rows() {
    let data = small();
    let store = fit(&data.classes, Some(64), Policy::default()).unwrap();
    let rows = score(&store, &data.test, None, None).unwrap();
    let mean = |t: Truth| {
        let v: Vec<f64> = rows.iter().filter(|r| r.truth == Some(t)).map(|r| r.score_c).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    assert!(mean(Truth::Ood) > mean(Truth::Id));
    for s in &store {
        assert!(s.domain > 0.0 && s.domain <= 1.0);
        assert_eq!(s.kept.len(), 64);
    }
}

#[test]
fn validation_rows_fall_inside_their_domain() {
    let data = small();
    for c in &data.classes {
        let space = build_cdds(c.id, &c.train, &c.valid, 40, Policy::SimilarityConsistent).unwrap();
        for r in c.valid.rows() {
            let d = space.decision(r).unwrap();
            assert_eq!(space.classify(d, Policy::SimilarityConsistent), Decision::Id);
            assert!(space.score_c(r).unwrap() <= 1.0 - space.min_decision);
            assert!(d <= space.domain);
        }
    }
}

#[test]
fn two_distinct_validation_rows() {
    let train = FeatureMatrix::from_rows(vec![vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 0.0], vec![2.0, 1.0, 0.5]]).unwrap();
    let valid = FeatureMatrix::from_rows(vec![vec![9.0, 1.0, 0.5], vec![1.0, 9.0, 0.5]]).unwrap();
    let space = build_cdds(0, &train, &valid, 3, Policy::default()).unwrap();
    let d: Vec<f64> = valid.rows().iter().map(|r| space.decision(r).unwrap()).collect();
    assert!(d.iter().all(|v| *v < 1.0));
    assert_eq!(space.domain, d[0].max(d[1]));
    assert_eq!(space.min_decision, d[0].min(d[1]));
}

#[test]
fn store_round_trip_and_unknown_class() {
    let data = small();
    let store = fit(&data.classes, None, Policy::DomainCeiling).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_store(dir.path(), &store).unwrap();
    let back = read_store(dir.path()).unwrap();
    assert_eq!(back, store);

    let mut test: TestSet = data.test.clone();
    test.predicted[0] = 17;
    assert!(matches!(score(&store, &test, None, None), Err(qdst::Error::UnknownClass(17))));
}

#[test]
fn too_few_validation_rows_names_the_class() {
    let data = small();
    let mut classes: Vec<ClassData> = data.classes.clone();
    classes[1].valid = FeatureMatrix::from_rows(vec![classes[1].valid.row(0).to_vec()]).unwrap();
    let err = fit(&classes, None, Policy::default()).unwrap_err();
    assert!(!err.is_input_error());
    assert!(err.to_string().contains("class 1"), "{err}");
}

#[test]
fn keep_count_sweep_covers_every_point() {
    let data = small();
    let counts = [1, 8, 16, 32, 48, 64];
    let rows = keep_count_sweep(&data.classes, &data.test, &counts, None, Orientation::OodHigh).unwrap();
    assert_eq!(rows.iter().map(|r| r.keep_count).collect::<Vec<_>>(), counts);
    for r in &rows {
        assert!((0.0..=1.0).contains(&r.metrics[0].auc));
    }
}

#[test]
fn logit_scores_keep_ranking_quality() {
    let data = small();
    let store = fit(&data.classes, None, Policy::default()).unwrap();
    let rows = score(&store, &data.test, Some((&data.logits, &data.weights, data.dml)), None).unwrap();
    let records: Vec<ScoreRecord> = rows
        .iter()
        .map(|r| ScoreRecord { score_c: r.score_c, score_d: r.score_d, composite: r.composite, truth: r.truth })
        .collect();
    let m = evaluate(&records, Orientation::OodHigh).unwrap();
    assert_eq!(m.len(), 3);
    assert!(m[2].auc >= m[0].auc - 0.01);
    let flipped = evaluate(&records, Orientation::IdHigh).unwrap();
    assert!((flipped[0].auc - (1.0 - m[0].auc)).abs() < 1e-12);
}
