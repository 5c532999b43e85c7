use std::collections::BTreeSet;

use hbsa_circuit::{build_hbsa_circuit, build_hbsa_circuit_with, run};
use hbsa_measurement::{
    build_table, classify, default_aux, detection_distribution, diff_tables, interval_groups,
    oracle_intervals, oracle_table, signature_table, to_csv, to_json, DetectionEvent, DetectorId,
    IntervalClass, MeasureError, SignatureTable, Timing,
};
use hbsa_state::{Arm, Bell, DelayTag, HyperBellIndex, TwoPhotonState};

fn table() -> SignatureTable {
    signature_table(&build_hbsa_circuit()).expect("canonical table")
}

fn ev(a: &str, b: &str, i: IntervalClass) -> DetectionEvent {
    DetectionEvent::new(a.parse().unwrap(), b.parse().unwrap(), i)
}

#[test]
fn phi_phi_row_matches_reference() {
    let t = table();
    let idx = HyperBellIndex::new(Bell::PhiPlus, Bell::PhiPlus);
    let computed: BTreeSet<_> = t.rows[&idx].iter().map(|(e, _)| *e).collect();
    assert_eq!(computed, oracle_table().rows[&idx]);
    assert!(computed.iter().all(|e| e.interval == IntervalClass::Zero));
    for (_, p) in &t.rows[&idx] {
        assert!((p - 1.0 / 8.0).abs() < 1e-12);
    }
}

#[test]
fn rows_are_normalized() {
    let t = table();
    for idx in HyperBellIndex::all() {
        assert!((t.row_total(&idx) - 1.0).abs() < 1e-10, "{idx}");
    }
}

#[test]
fn each_row_has_a_single_interval_class() {
    let t = table();
    let reference = oracle_intervals();
    for (idx, classes) in t.intervals() {
        assert_eq!(classes.len(), 1, "{idx}");
        assert_eq!(
            classes.into_iter().next().unwrap(),
            reference[&idx],
            "{idx}"
        );
    }
    for (_, rows) in interval_groups(&t) {
        assert_eq!(rows.len(), 4);
    }
}

#[test]
fn table_is_deterministic() {
    let c = build_hbsa_circuit();
    let a = build_table(&c, &default_aux()).unwrap();
    let b = build_table(&c, &default_aux()).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        to_json(&a, Timing::default()).unwrap(),
        to_json(&b, Timing::default()).unwrap()
    );
}

#[test]
fn classification_examples() {
    let t = table();
    assert_eq!(
        classify(&ev("a11H", "b22V", IntervalClass::Zero), &t).unwrap(),
        HyperBellIndex::new(Bell::PhiPlus, Bell::PhiPlus)
    );
    assert_eq!(
        classify(&ev("a11H", "a11V", IntervalClass::T1PmT0), &t).unwrap(),
        HyperBellIndex::new(Bell::PsiMinus, Bell::PhiMinus)
    );
    // The reference lists a11^{H(V)}b22^{V(H)} in the phi+psi+ row at t1.
    assert_eq!(
        classify(&ev("a11H", "b22V", IntervalClass::T1), &t).unwrap(),
        HyperBellIndex::new(Bell::PhiPlus, Bell::PsiPlus)
    );
    let absent = ev("a11H", "a11H", IntervalClass::T0);
    let o = oracle_table();
    assert!(o.rows.values().all(|r| !r.contains(&absent)));
    assert!(t.rows.values().all(|r| r.iter().all(|(e, _)| *e != absent)));
    assert!(matches!(
        classify(&absent, &t),
        Err(MeasureError::UnknownEvent(_))
    ));
}

#[test]
fn reference_diff_with_itself_is_empty() {
    let o = oracle_table();
    assert!(diff_tables(&o, &o).is_empty());
}

#[test]
fn disagreement_with_reference_is_confined_to_pol_psi_minus_rows() {
    // The reference lists the psi+psi- and psi-psi- rows the other way round
    // from what the analyzer produces; every other row agrees exactly.
    let d = diff_tables(&table().event_sets(), &oracle_table());
    let differing: BTreeSet<HyperBellIndex> = d.rows.iter().map(|r| r.input).collect();
    let expected: BTreeSet<HyperBellIndex> =
        [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus]
            .into_iter()
            .map(|s| HyperBellIndex::new(s, Bell::PsiMinus))
            .collect();
    assert_eq!(differing, expected);
    let t = table().event_sets();
    let o = oracle_table();
    let pp = HyperBellIndex::new(Bell::PsiPlus, Bell::PsiMinus);
    let mp = HyperBellIndex::new(Bell::PsiMinus, Bell::PsiMinus);
    assert_eq!(t.rows[&pp], o.rows[&mp]);
    assert_eq!(t.rows[&mp], o.rows[&pp]);
}

fn swap_delays(s: &TwoPhotonState) -> TwoPhotonState {
    let f = |l: hbsa_state::Label| l.with_delay(DelayTag::new(l.delay.n1, l.delay.n0));
    TwoPhotonState::from_terms(s.iter().map(|(&(a, b), &c)| ((f(a), f(b)), c)))
}

#[test]
fn swapping_t0_and_t1_changes_only_intervals() {
    let c = build_hbsa_circuit();
    let aux = default_aux();
    let normal = build_table(&c, &aux).unwrap();
    let mut rows = std::collections::BTreeMap::new();
    for idx in HyperBellIndex::all() {
        let out = run(&c, &hbsa_state::make_with_aux(idx, &aux).unwrap()).unwrap();
        rows.insert(idx, detection_distribution(&swap_delays(&out)).unwrap());
    }
    let swapped = SignatureTable { rows };
    let d = diff_tables(&swapped.event_sets(), &normal.event_sets());
    assert!(!d.is_empty());
    for r in &d.rows {
        assert!(r.missing.is_empty() && r.extra.is_empty(), "{}", r.input);
        for m in &r.interval_mismatches {
            let pair = [m.expected, m.found];
            assert!(pair.contains(&IntervalClass::T0) && pair.contains(&IntervalClass::T1));
        }
    }
}

#[test]
fn wrong_pairing_is_detected() {
    let c = build_hbsa_circuit_with(&[(Arm::A1, Arm::A2), (Arm::B1, Arm::B2)]).unwrap();
    let t = build_table(&c, &default_aux()).unwrap();
    assert!(!diff_tables(&t.event_sets(), &table().event_sets()).is_empty());
}

#[test]
fn exports_cover_every_event() {
    let t = table();
    let n: usize = t.rows.values().map(Vec::len).sum();
    let csv = to_csv(&t).unwrap();
    assert_eq!(csv.lines().count(), n + 1);
    assert!(csv.starts_with("spatial,pol,interval,det1,det2,probability"));
    let v: serde_json::Value =
        serde_json::from_str(&to_json(&t, Timing::default()).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
    assert_eq!(v["rows"][0]["interval"], "0");
    assert_eq!(v["timing"]["t1_ns"], 10.0);
    let _: DetectorId = v["rows"][0]["events"][0]["det1"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
}
