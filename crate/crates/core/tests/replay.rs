use measure_algebra::certifier::{build_signature_partition, replay_proof, TraceOutcome};
use measure_algebra::generate::pair_incidence;

#[test]
fn pair_incidence_reaches_piece_stage() {
    let (f, terms) = pair_incidence(100).unwrap();
    let t = replay_proof(&f, 1, &terms, 0).unwrap();
    assert_eq!(t.parameters.antichain, 1);
    assert_eq!((t.parameters.k, t.parameters.p), (3, 99));
    assert_eq!(t.witness.indices.len(), 2);
    let TraceOutcome::NotGraded(stage) = &t.outcome else {
        panic!("expected the piece stage");
    };
    assert!(stage.max_column_hits <= 1);
    assert!(stage.pieces[stage.culprit]
        .iter()
        .all(|a| !f.level(3).contains(a)));
    for (i, c) in terms.iter().enumerate() {
        let u = &(&stage.pieces[i][0] | &stage.pieces[i][1]) | &stage.pieces[i][2];
        assert_eq!(&u, c);
    }
    let v = &stage.failure;
    assert!(f.level(v.level).contains(&v.whole));
    assert!(!f.level(v.level + 1).contains(&v.part));
    assert!(!f.level(v.level + 1).contains(&v.rest()));
    let _ = build_signature_partition(&terms).unwrap();
}
