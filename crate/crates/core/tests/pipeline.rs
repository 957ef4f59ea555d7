use grassbwb::pipeline::{hodge_numbers, reproduce, TorsionWitness};

#[test]
fn reproduction_is_deterministic() {
    let a = serde_json::to_string(&reproduce().unwrap()).unwrap();
    let b = serde_json::to_string(&reproduce().unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn every_fixture_check_passes() {
    let r = reproduce().unwrap();
    let failures: Vec<_> = r.failures().collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn report_invariants() {
    let h = hodge_numbers().unwrap();
    assert_eq!(h.chi_O, 1 - h.q + h.p_g);
    assert_eq!(h.b2, 2 * h.p_g + h.h11);
    assert_eq!(h.chi_top, h.b0 - h.b1 + h.b2 - h.b3 + h.b4);
    assert_eq!((h.b1, h.b3), (2 * h.q, 2 * h.q));
    assert_eq!(12 * h.chi_O, h.K_S_sq + h.chi_top);
}

#[test]
fn torsion_branches() {
    assert!(TorsionWitness::from_dims(0, 1).torsion);
    assert!(!TorsionWitness::from_dims(1, 1).torsion);
}

#[test]
fn payloads_round_trip_through_json() {
    let r = reproduce().unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: grassbwb::pipeline::Reproduction = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let b = grassbwb::bwb_bundle(&grassbwb::families::Family::Sym2U.bundle(4, -2).unwrap()).unwrap();
    let back: grassbwb::BwbResult = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
    assert_eq!(back, b);
}
