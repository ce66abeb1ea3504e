use purecomp_core::counterexample::{rd_injectivity_failure, rd_series_obstruction, rd_vs_pure, socle_facts, socle_module, WitnessRing};

#[test]
fn witness_ring_facts() {
    for q in [2, 3] {
        let w = WitnessRing::new(q).unwrap();
        let f = w.facts();
        assert_eq!(f.size, (q * q * q) as usize);
        assert!(f.ra_meets_rb_trivially && f.ann_a_is_p && f.ann_b_is_p && f.p_squared_zero);
        assert!(f.local && !f.arithmetic && !f.bezout);
    }
}

#[test]
fn rd_series_obstruction_q2() {
    let o = rd_series_obstruction(&WitnessRing::new(2).unwrap()).unwrap();
    assert!(o.indecomposable && o.no_rd_series);
    assert_eq!((o.module_size, o.mu, o.top_dimension), (32, 2, 2));
    assert!(o.cyclic_rd_starts.iter().all(|c| !c.direct_summand));
    assert!(o.controls.iter().all(|c| c.series_count != "0"));
}

#[test]
fn rd_differs_from_pure() {
    for q in [2, 3] {
        let s = rd_vs_pure(&WitnessRing::new(q).unwrap()).unwrap();
        assert!(s.rd && !s.pure && s.separated);
    }
}

#[test]
fn socle_is_residue_field_and_rd_injectivity_fails() {
    let w = WitnessRing::new(2).unwrap();
    let s = socle_facts(&w, &socle_module(&w).unwrap()).unwrap();
    assert!(s.isomorphic_to_residue_field && s.socle_simple && s.socle_essential);
    let f = rd_injectivity_failure(&w).unwrap();
    assert!(f.submodule_rd && !f.phi_extends && f.control_all_extend);
}

#[test]
fn rejects_unsupported_field_size() {
    assert!(WitnessRing::new(6).is_err());
}
