use dcft_core::abgroup::{profinite_complete, AbHom, FgAbGroup};
use dcft_core::derivedab::{
    abelianization_map, derived_abelianization, induced_on_pi, pi, profinite_derived_pi, transfer_derived, DerivedError,
    FiniteQuotientTower,
};
use dcft_core::grouphomology::{
    abelianization, bar_chains, by_name, catalog, cyclic, group_homology_range, h1_to_abelianization, verlagerung, FiniteGroup, Subgroup,
};
use dcft_core::guard::SizeGuard;

const GUARD: SizeGuard = SizeGuard(1_000_000);

#[test]
fn known_values() {
    let s3 = by_name("S3").unwrap();
    assert_eq!(pi(s3, 0, GUARD).unwrap(), FgAbGroup::cyclic(2));
    assert_eq!(pi(s3, 2, GUARD).unwrap(), FgAbGroup::cyclic(6));
    let c2 = by_name("C2").unwrap();
    assert_eq!(pi(c2, 1, GUARD).unwrap(), FgAbGroup::zero());
    assert_eq!(pi(c2, 2, GUARD).unwrap(), FgAbGroup::cyclic(2));
}

#[test]
fn degrees_beyond_the_model_are_refused() {
    let d = derived_abelianization(by_name("C3").unwrap(), 2, GUARD).unwrap();
    assert!(d.pi(1).is_ok());
    assert!(matches!(d.pi(2), Err(DerivedError::Unreliable { .. })));
    assert_eq!(d.pis().len(), 2);
}

#[test]
fn homotopy_matches_bar_homology() {
    for e in catalog().iter().filter(|e| e.group.order() <= 10) {
        let d = derived_abelianization(&e.group, 3, GUARD).unwrap();
        let h = group_homology_range(&e.group, 3, GUARD).unwrap();
        assert_eq!(d.pi(0).unwrap(), abelianization(&e.group), "{}", e.name);
        for i in 0..=2 {
            assert_eq!(d.pi(i).unwrap(), h[i + 1], "{} pi_{i}", e.name);
        }
    }
}

fn phi(g: &FiniteGroup) -> AbHom {
    let b1 = bar_chains(g, 2, GUARD).unwrap().homology_with_basis(1).unwrap();
    h1_to_abelianization(g, &b1)
}

#[test]
fn transfer_at_degree_zero_is_verlagerung() {
    for e in catalog().iter().filter(|e| e.group.order() <= 8) {
        let g = &e.group;
        for s in g.subgroups() {
            let h = Subgroup::new(g, &s).unwrap();
            let t = transfer_derived(g, &h, 0, GUARD).unwrap();
            let lhs = phi(h.group()).compose(&t).unwrap();
            let rhs = verlagerung(g, &h).compose(&phi(g)).unwrap();
            assert_eq!(lhs, rhs, "{} > subgroup of order {}", e.name, s.len());
        }
    }
    let c4 = by_name("C4").unwrap();
    let h = Subgroup::new(c4, &c4.generated(&[2])).unwrap();
    assert!(transfer_derived(c4, &h, 0, GUARD).unwrap().is_surjective());
    let v4 = by_name("C2xC2").unwrap();
    let x = (1..4).find(|&x| v4.element_order(x) == 2).unwrap();
    let h = Subgroup::new(v4, &[0, x]).unwrap();
    assert!(transfer_derived(v4, &h, 0, GUARD).unwrap().is_zero());
}

#[test]
fn naturality_for_quotients() {
    for e in catalog().iter().filter(|e| e.group.order() <= 12) {
        let g = &e.group;
        for n in g.subgroups().into_iter().filter(|s| g.is_normal(s)) {
            let (q, proj) = g.quotient(&n, "Q").unwrap();
            let on_pi = induced_on_pi(g, &q, &proj, 0, GUARD).unwrap();
            let on_ab = abelianization_map(g, &q, &proj).unwrap();
            let lhs = on_ab.compose(&phi(g)).unwrap();
            let rhs = phi(&q).compose(&on_pi).unwrap();
            assert_eq!(lhs, rhs, "{} / normal subgroup of order {}", e.name, n.len());
            assert!(on_pi.is_surjective());
        }
    }
}

#[test]
fn constant_tower_stabilizes_at_level_two() {
    for name in ["S3", "Q8", "C6"] {
        let g = by_name(name).unwrap();
        for i in 0..=1 {
            let p = profinite_derived_pi(&FiniteQuotientTower::constant(g, 3), i, GUARD).unwrap();
            assert!(p.stabilized);
            assert_eq!(p.stable_from, Some(2));
            assert_eq!(p.limit, Some(profinite_complete(&pi(g, i, GUARD).unwrap())));
        }
    }
}

#[test]
fn two_adic_tower_is_reported_unstabilized() {
    let t = FiniteQuotientTower::cyclic_p_power(2, 3);
    let p = profinite_derived_pi(&t, 0, GUARD).unwrap();
    assert_eq!(p.values, vec![FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), FgAbGroup::cyclic(8)]);
    assert!(!p.stabilized && p.limit.is_none());
    for (k, m) in p.transitions.iter().enumerate() {
        assert!(m.is_surjective() && !m.is_injective(), "transition {k}");
    }
}

#[test]
fn lower_central_towers_end_at_the_group() {
    for name in ["Q8", "D4", "A4", "S3"] {
        let g = by_name(name).unwrap();
        let t = FiniteQuotientTower::lower_central(g);
        assert_eq!(t.levels().last().unwrap().order(), g.order());
        let p = profinite_derived_pi(&t, 0, GUARD).unwrap();
        assert!(p.stabilized, "{name}");
        assert_eq!(p.limit, Some(profinite_complete(&abelianization(g))));
    }
}

#[test]
fn tower_validation_and_json() {
    let t = FiniteQuotientTower::cyclic_p_power(3, 2);
    let back = FiniteQuotientTower::from_json(&t.to_json()).unwrap();
    assert_eq!(back.maps(), t.maps());
    let bad = FiniteQuotientTower::new(vec![cyclic(3), cyclic(9)], vec![vec![0; 9]]);
    assert!(matches!(bad, Err(DerivedError::BadTowerMap { index: 0 })));
    assert!(matches!(FiniteQuotientTower::new(vec![cyclic(3)], vec![vec![0]]), Err(DerivedError::TowerShape)));
}
