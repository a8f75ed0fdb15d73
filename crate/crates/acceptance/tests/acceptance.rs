use acceptance::{report_json, run_all, velocity_oracle, Outcome, KNOWN_FALSE};
use qcore::par::Exec;

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(Exec::default());
    for o in &outcomes {
        println!("{o}");
    }
    let ids: Vec<&str> = outcomes.iter().map(|o| o.id.as_str()).collect();
    assert_eq!(
        ids,
        ["AC1", "AC2", "AC3", "AC4", "AC5", "AC6", "AC7", "AC8", "AC9", "AC10a", "AC10b", "AC10c", "AC10d", "AC11"]
    );
    let unexpected: Vec<&Outcome> = outcomes.iter().filter(|o| !o.as_expected()).collect();
    assert!(unexpected.is_empty(), "unexpected verdicts: {unexpected:#?}");
    for id in KNOWN_FALSE {
        assert!(outcomes.iter().any(|o| o.id == *id && !o.pass), "{id} should fail");
    }
    assert_eq!(report_json(&outcomes)["all_as_expected"], true);
}

#[test]
fn oracle_rejects_an_unmatched_coefficient() {
    use diffalg::DiffPoly;
    use dressing::symbolic_l;
    use psdo::PsdOp;
    use qcore::Quaternion;
    // [L, ∂²] has a nonzero coefficient at ∂¹ only if the potential does
    let l = symbolic_l(-3);
    let p = PsdOp::<DiffPoly>::del(2, None).unwrap();
    let v = velocity_oracle(&l, &p);
    assert!(v.is_none());
    let p = PsdOp::<DiffPoly>::term(Quaternion::one(), 0, None).unwrap();
    let v = velocity_oracle(&l, &p).unwrap();
    assert!(v.values().all(DiffPoly::is_empty));
}
