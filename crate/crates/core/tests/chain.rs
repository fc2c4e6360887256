use dcft_core::abgroup::{FgAbGroup, IntMatrix};
use dcft_core::chain::{ChainComplex, ChainError};
use dcft_core::suite::random_complex;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn complex(seed: u64) -> ChainComplex {
    random_complex(&mut StdRng::seed_from_u64(seed), 10)
}

fn same_components(a: &ChainComplex, b: &ChainComplex) -> bool {
    a.ranks() == b.ranks() && (1..=a.top_degree()).all(|n| a.differential(n) == b.differential(n))
}

#[test]
fn non_complex_is_rejected() {
    let d1 = IntMatrix::from_rows(&[[1]]);
    let d2 = IntMatrix::from_rows(&[[1]]);
    let e = ChainComplex::new(vec![1, 1, 1], vec![d1, d2], false).unwrap_err();
    assert_eq!(e, ChainError::NotAComplex { degree: 2 });
    let bad = ChainComplex::new(vec![1, 2], vec![IntMatrix::from_rows(&[[1]])], false).unwrap_err();
    assert!(matches!(bad, ChainError::ShapeMismatch { degree: 1, .. }));
}

#[test]
fn cyclic_resolution_homology() {
    // Z <-0- Z <-2- Z <-0- Z <-2- Z : the periodic resolution of Z/2 tensored down to Z
    let z = |k: i64| IntMatrix::from_rows(&[[k]]);
    let c = ChainComplex::new(vec![1; 5], vec![z(0), z(2), z(0), z(2)], false).unwrap();
    let h = c.homology_all();
    assert_eq!(h[0], FgAbGroup::free(1));
    assert_eq!(h[1], FgAbGroup::cyclic(2));
    assert_eq!(h[2], FgAbGroup::zero());
    assert_eq!(h[3], FgAbGroup::cyclic(2));
    assert_eq!(h[4], FgAbGroup::zero());
}

#[test]
fn shift_down_keeps_homology_of_dropped_boundary() {
    let z = |k: i64| IntMatrix::from_rows(&[[k]]);
    let c = ChainComplex::new(vec![1, 1, 1], vec![z(2), z(0)], false).unwrap();
    let s = c.shift(-1);
    assert_eq!(s.homology(0).unwrap(), c.homology(1).unwrap());
    assert_eq!(s.homology(1).unwrap(), c.homology(2).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_complexes_validate(seed in any::<u64>()) {
        let c = complex(seed);
        prop_assert!(c.validate().is_ok());
        prop_assert!(c.top_degree() <= 4);
    }

    #[test]
    fn homology_commutes_with_direct_sum(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (complex(a), complex(b));
        let s = x.direct_sum(&y);
        prop_assert!(s.validate().is_ok());
        for n in 0..=s.top_degree() {
            let hx = if n <= x.top_degree() { x.homology(n).unwrap() } else { FgAbGroup::zero() };
            let hy = if n <= y.top_degree() { y.homology(n).unwrap() } else { FgAbGroup::zero() };
            prop_assert_eq!(s.homology(n).unwrap(), hx.direct_sum(&hy));
        }
    }

    #[test]
    fn shift_round_trip(seed in any::<u64>(), k in 0i64..4) {
        let c = complex(seed);
        let back = c.shift(k).shift(-k);
        prop_assert!(same_components(&c, &back));
        let up = c.shift(k);
        for n in 0..=c.top_degree() {
            prop_assert_eq!(up.homology(n + k as usize).unwrap(), c.homology(n).unwrap());
        }
    }

    #[test]
    fn shift_down_preserves_retained_homology(seed in any::<u64>(), k in 1i64..3) {
        let c = complex(seed);
        prop_assume!(c.top_degree() >= k as usize);
        let s = c.shift(-k);
        for n in 0..=s.top_degree() {
            prop_assert_eq!(s.homology(n).unwrap(), c.homology(n + k as usize).unwrap());
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(seed in any::<u64>()) {
        let c = complex(seed);
        let betti: i64 = c.homology_all().iter().enumerate()
            .map(|(n, h)| if n % 2 == 0 { h.free_rank() as i64 } else { -(h.free_rank() as i64) })
            .sum();
        prop_assert_eq!(c.euler_characteristic(), betti);
    }

    #[test]
    fn truncation_is_idempotent(seed in any::<u64>()) {
        let c = complex(seed);
        let t = c.connective_truncate();
        prop_assert_eq!(t.connective_truncate(), t.clone());
        prop_assert!(same_components(&t, &c));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let c = complex(seed);
        let back = ChainComplex::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }
}
