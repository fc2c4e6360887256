use dcft_core::abgroup::FgAbGroup;
use dcft_core::chain::ChainComplex;
use dcft_core::grouphomology::{by_name, reduced_bar_chains};
use dcft_core::guard::SizeGuard;
use dcft_core::simplicial::{
    bar_construction, dold_kan_round_trip, dold_thom_check, from_chains, multiset_count, surjections, sym_power, sym_power_chains,
    FiniteSimplicialSet, SimplicialAbGroup, SimplicialError,
};
use dcft_core::suite::random_complex;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const GUARD: SizeGuard = SizeGuard(1_000_000);

fn relabel(x: &FiniteSimplicialSet, perms: &[Vec<usize>]) -> FiniteSimplicialSet {
    let top = x.top_level();
    let inv: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut q = vec![0; p.len()];
            for (a, &b) in p.iter().enumerate() {
                q[b] = a;
            }
            q
        })
        .collect();
    FiniteSimplicialSet::from_fns(
        top,
        |n| x.count(n),
        |n, i, y| perms[n - 1][x.face(n, i)[inv[n][y]]],
        |n, j, y| perms[n + 1][x.degeneracy(n, j)[inv[n][y]]],
        |n| perms[n][x.basepoint(n)],
    )
    .unwrap()
}

#[test]
fn corrupted_face_is_rejected() {
    let mut x = FiniteSimplicialSet::circle(3);
    assert!(x.validate().is_ok());
    x.set_face(2, 0, 2, 0);
    let err = x.validate().unwrap_err();
    assert!(matches!(err, SimplicialError::Identity { .. }), "{err}");
}

#[test]
fn bar_construction_counts() {
    let c2 = by_name("C2").unwrap();
    let b = bar_construction(c2, 4, GUARD).unwrap();
    assert!(b.validate().is_ok());
    assert_eq!(b.count(2), 4);
    assert_eq!(b.degenerate(2).iter().filter(|&&d| d).count(), 3);

    // nondegenerate n-simplices of BG are tuples avoiding the identity
    let c3 = by_name("C3").unwrap();
    let b = bar_construction(c3, 3, GUARD).unwrap();
    let free = SimplicialAbGroup::free_on(&b);
    let ranks = free.normalized_chains().ranks().to_vec();
    let want: Vec<usize> = (0..=3).map(|n| 2usize.pow(n as u32)).collect();
    assert_eq!(ranks, want);
    for (n, &w) in want.iter().enumerate() {
        assert_eq!(b.degenerate(n).iter().filter(|&&d| !d).count(), w);
    }
}

#[test]
fn inverse_dold_kan_level_ranks() {
    let c = ChainComplex::concentrated(1, 1, 1);
    let s = from_chains(&c, 5).unwrap();
    for n in 0..=5 {
        assert_eq!(s.rank(n), n, "level {n}");
        assert_eq!(surjections(n, 1).len(), n);
    }
}

#[test]
fn dold_kan_of_shifted_bar_chains() {
    let c2 = by_name("C2").unwrap();
    let c = reduced_bar_chains(c2, 4, GUARD).unwrap().shift(-1);
    let s = from_chains(&c, c.top_degree()).unwrap();
    assert!(s.validate().is_ok());
    assert_eq!(s.homotopy_group(0).unwrap(), FgAbGroup::cyclic(2));
    assert_eq!(s.homotopy_group(1).unwrap(), FgAbGroup::zero());
    assert_eq!(s.homotopy_group(2).unwrap(), FgAbGroup::cyclic(2));
    assert!(matches!(s.homotopy_group(3), Err(SimplicialError::Unreliable { .. })));
}

#[test]
fn symmetric_powers_of_circles() {
    let circle = FiniteSimplicialSet::circle(3);
    let r = dold_thom_check(&circle, 3, 1, GUARD).unwrap();
    assert!(r.values.iter().all(|v| *v == FgAbGroup::free(1)));
    assert!(r.stabilized && r.matches_reduced_homology);
    let n1 = sym_power_chains(&circle, 1, 1, GUARD).unwrap().homology(1).unwrap();
    assert_eq!(n1, r.reduced_homology);

    let wedge = FiniteSimplicialSet::wedge_of_circles(2, 3);
    let r = dold_thom_check(&wedge, 3, 1, GUARD).unwrap();
    assert_eq!(r.stable_value, Some(FgAbGroup::free(2)));
    assert!(r.matches_reduced_homology);
}

#[test]
fn symmetric_power_counts_are_multisets() {
    let x = FiniteSimplicialSet::wedge_of_circles(2, 3);
    for n in 1..=3 {
        let s = sym_power(&x, n, GUARD).unwrap();
        assert!(s.validate().is_ok());
        for k in 0..=3 {
            assert_eq!(s.count(k) as u128, multiset_count(x.count(k), n));
        }
    }
    assert!(sym_power(&x, 3, SizeGuard(10)).is_err());
}

#[test]
fn stabilization_below_n() {
    for x in [FiniteSimplicialSet::circle(4), FiniteSimplicialSet::wedge_of_circles(2, 3)] {
        for deg in 0..=1 {
            let vals: Vec<FgAbGroup> = (deg + 1..=3)
                .map(|n| sym_power_chains(&x, n, deg, GUARD).unwrap().homology(deg).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]), "degree {deg}: {vals:?}");
        }
    }
}

#[test]
fn json_round_trip() {
    let x = FiniteSimplicialSet::wedge_of_circles(3, 3);
    assert_eq!(FiniteSimplicialSet::from_json(&x.to_json()).unwrap(), x);
}

fn perms_for(x: &FiniteSimplicialSet) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (0..=x.top_level())
        .map(|n| Just((0..x.count(n)).collect::<Vec<usize>>()).prop_shuffle().boxed())
        .collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dold_kan_round_trip_on_random_complexes(seed in any::<u64>()) {
        let c = random_complex(&mut StdRng::seed_from_u64(seed), 10);
        prop_assert!(dold_kan_round_trip(&c, c.top_degree()).is_ok());
        let s = from_chains(&c, c.top_degree() + 1).unwrap();
        let alt = s.degenerate_quotient_chains();
        for i in 0..=c.top_degree() {
            let h = s.homotopy_group(i).unwrap();
            prop_assert_eq!(&h, &c.homology(i).unwrap());
            prop_assert_eq!(&h, &alt.homology(i).unwrap());
        }
    }

    #[test]
    fn orbit_counts_survive_relabeling(perms in perms_for(&FiniteSimplicialSet::wedge_of_circles(2, 3)), n in 1usize..4) {
        let x = FiniteSimplicialSet::wedge_of_circles(2, 3);
        let y = relabel(&x, &perms);
        prop_assert!(y.validate().is_ok());
        let (sx, sy) = (sym_power(&x, n, GUARD).unwrap(), sym_power(&y, n, GUARD).unwrap());
        for k in 0..=3 {
            prop_assert_eq!(sx.count(k), sy.count(k));
        }
        prop_assert_eq!(
            sym_power_chains(&x, n, 1, GUARD).unwrap().homology(1).unwrap(),
            sym_power_chains(&y, n, 1, GUARD).unwrap().homology(1).unwrap()
        );
    }
}
