use dcft_core::abgroup::{
    cokernel_presentation, hnf, invariant_factors, iso_test, kernel, profinite_complete, snf, AbHom, Cokernel, FgAbGroup, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Whether `target` is an integer combination of the columns of `a` with
/// coefficients in `-bound..=bound`.
fn small_combination(a: &IntMatrix, target: &[BigInt], bound: i64) -> bool {
    let k = a.cols();
    let mut coeffs = vec![-bound; k];
    loop {
        let c: Vec<BigInt> = coeffs.iter().map(|&x| big(x)).collect();
        if a.mul_vec(&c) == target {
            return true;
        }
        let mut i = 0;
        while i < k && coeffs[i] == bound {
            coeffs[i] = -bound;
            i += 1;
        }
        if i == k {
            return false;
        }
        coeffs[i] += 1;
    }
}

#[test]
fn hnf_spans_the_same_lattice() {
    let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
    let h = hnf(&a);
    for j in 0..2 {
        assert!(small_combination(&a, &h.col(j), 10));
        assert!(small_combination(&h, &a.col(j), 10));
    }
}

#[test]
fn invariant_factors_match_gcd_and_determinant() {
    let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
    let d = invariant_factors(&a);
    let g = [2i64, 4, 6, 8].iter().fold(0i64, |acc, &x| acc.gcd(&x));
    assert_eq!(d[0], big(g));
    assert_eq!(&d[0] * &d[1], a.det().abs());
    assert_eq!(d, vec![big(2), big(4)]);
}

/// Finite abelian groups given as products of cyclic factors, compared by
/// counting elements of each order.
fn order_profile(moduli: &[u64]) -> Vec<usize> {
    let n: u64 = moduli.iter().product();
    let mut counts = vec![0usize; n as usize + 1];
    let mut x = vec![0u64; moduli.len()];
    loop {
        let ord = x.iter().zip(moduli).fold(1u64, |acc, (&xi, &m)| acc.lcm(&(m / xi.gcd(&m))));
        counts[ord as usize] += 1;
        let mut i = 0;
        while i < x.len() && x[i] + 1 == moduli[i] {
            x[i] = 0;
            i += 1;
        }
        if i == x.len() {
            return counts;
        }
        x[i] += 1;
    }
}

#[test]
fn coprime_factors_merge() {
    let g = cokernel_presentation(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
    assert_eq!(g, FgAbGroup::cyclic(6));
    assert_eq!(order_profile(&[2, 3]), order_profile(&[6]));
    assert!(iso_test(&FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(3)), &FgAbGroup::cyclic(6)));
    assert_ne!(order_profile(&[2, 2]), order_profile(&[4]));
    assert!(!iso_test(&FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(2)), &FgAbGroup::cyclic(4)));
}

#[test]
fn cokernel_coordinates_kill_relations() {
    let a = IntMatrix::from_rows(&[[2, 0, 1], [0, 4, 1], [0, 0, 0]]);
    let c = Cokernel::of(&a);
    for j in 0..a.cols() {
        let mut x = c.coords(&a.col(j));
        c.group.reduce(&mut x);
        assert!(x.iter().all(Zero::is_zero));
    }
}

#[test]
fn hom_equality_reduces_modulo_orders() {
    let z4 = FgAbGroup::cyclic(4);
    let two = AbHom::scalar(&z4, &big(2));
    let six = AbHom::scalar(&z4, &big(6));
    assert_eq!(two, six);
    assert_eq!(two.image_order(), Some(big(2)));
    assert!(!two.is_injective() && !two.is_surjective());
    assert!(AbHom::scalar(&z4, &big(3)).is_isomorphism());
}

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows_with_cols(&rows, c)
        })
    })
}

fn group_strategy() -> impl Strategy<Value = FgAbGroup> {
    (0..3usize, prop::collection::vec(1..13i64, 0..4))
        .prop_map(|(r, t)| FgAbGroup::from_cyclic_factors(r, t.into_iter().map(BigInt::from)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_reconstructs_diagonal(a in matrix_strategy(5, 20)) {
        let f = snf(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.diagonal_matrix());
        prop_assert_eq!(f.u.det().abs(), BigInt::one());
        prop_assert_eq!(f.v.det().abs(), BigInt::one());
        prop_assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
    }

    #[test]
    fn invariant_factors_divide(a in matrix_strategy(5, 50)) {
        let d = invariant_factors(&a);
        prop_assert!(d.iter().all(|x| x.is_positive()));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn square_cokernel_order_is_determinant(n in 1..5usize, v in prop::collection::vec(-9i64..=9, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect();
        let a = IntMatrix::from_rows_with_cols(&rows, n);
        let det = a.det();
        prop_assume!(!det.is_zero());
        let g = cokernel_presentation(&a);
        prop_assert_eq!(g.free_rank(), 0);
        prop_assert_eq!(g.order().unwrap(), det.abs());
        let prod: BigInt = invariant_factors(&a).iter().product();
        prop_assert_eq!(prod, det.abs());
    }

    #[test]
    fn kernel_is_saturated_and_exact(a in matrix_strategy(4, 9)) {
        let k = kernel(&a);
        prop_assert!(a.mul(&k.basis).is_zero());
        prop_assert_eq!(k.coords.mul(&k.basis), IntMatrix::identity(k.dim()));
        prop_assert_eq!(k.dim() + invariant_factors(&a).len(), a.cols());
    }

    #[test]
    fn iso_test_is_an_equivalence(g in group_strategy(), h in group_strategy(), k in group_strategy()) {
        prop_assert!(iso_test(&g, &g));
        prop_assert_eq!(iso_test(&g, &h), iso_test(&h, &g));
        if iso_test(&g, &h) && iso_test(&h, &k) {
            prop_assert!(iso_test(&g, &k));
        }
        let swapped = h.direct_sum(&g);
        prop_assert!(iso_test(&g.direct_sum(&h), &swapped));
    }

    #[test]
    fn completion_commutes_with_sums(g in group_strategy(), h in group_strategy()) {
        prop_assert_eq!(profinite_complete(&g.direct_sum(&h)), profinite_complete(&g).direct_sum(&profinite_complete(&h)));
    }

    #[test]
    fn finite_groups_match_order_profile(t in prop::collection::vec(1u64..9, 1..4)) {
        let g = FgAbGroup::from_cyclic_factors(0, t.iter().map(|&x| BigInt::from(x)));
        let canon: Vec<u64> = g.torsion().iter().map(|x| u64::try_from(x).unwrap()).collect();
        let canon = if canon.is_empty() { vec![1] } else { canon };
        prop_assert_eq!(order_profile(&t), order_profile(&canon));
    }
}
