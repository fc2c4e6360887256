use dcft_core::abgroup::{profinite_complete, FgAbGroup};
use dcft_core::cft::{
    artin_pi0_check, catalog_pairs, curated_fields, idele_class_data, kummer_cohomology, norm_transfer_report, pic_homotopy,
    poitou_tate_order_check, verify_main_theorem, CftError,
};
use dcft_core::guard::SizeGuard;
use dcft_core::numberfield::{class_group, primes_below, Ideal};
use num_integer::Integer;

const GUARD: SizeGuard = SizeGuard(1_000_000);
const ACCEPTANCE: [i64; 10] = [-3, -4, -7, -8, -15, -20, -23, -31, -47, -84];

fn unit_count(d: i64) -> u64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// `|Cl[n]|` and `|n Cl|` by walking the class group's Cayley table.
fn torsion_and_powers(d: i64, n: u64) -> (usize, usize) {
    let cl = class_group(d).unwrap();
    let h = cl.class_number();
    let pow = |x: usize| (1..n).fold(x, |acc, _| cl.mul(acc, x));
    let torsion = (0..h).filter(|&x| pow(x) == 0).count();
    let mut image: Vec<usize> = (0..h).map(pow).collect();
    image.sort();
    image.dedup();
    (torsion, image.len())
}

fn order(g: &FgAbGroup) -> u64 {
    u64::try_from(g.order().unwrap()).unwrap()
}

#[test]
fn kummer_spot_values() {
    let k = kummer_cohomology(-20, 2).unwrap();
    assert_eq!(k.h0, FgAbGroup::cyclic(2));
    assert_eq!(order(&k.h1), 4);
    assert_eq!(k.h2, FgAbGroup::cyclic(2));

    let k = kummer_cohomology(-4, 3).unwrap();
    assert_eq!((k.h0, k.h1, k.h2), (FgAbGroup::zero(), FgAbGroup::zero(), FgAbGroup::zero()));

    let k = kummer_cohomology(-3, 3).unwrap();
    assert_eq!(k.h0, FgAbGroup::cyclic(3));
    assert_eq!(k.h1, FgAbGroup::cyclic(3));
    assert_eq!(k.h2, FgAbGroup::zero());

    assert!(matches!(kummer_cohomology(-3, 1), Err(CftError::BadLevel(1))));
}

#[test]
fn kummer_orders_match_tables() {
    for d in ACCEPTANCE {
        for n in [2u64, 3, 4, 5, 6, 8, 12] {
            let k = kummer_cohomology(d, n).unwrap();
            let (tors, powers) = torsion_and_powers(d, n);
            let h = class_group(d).unwrap().class_number();
            let mu = unit_count(d).gcd(&n);
            assert_eq!(order(&k.h0), mu, "d = {d}, n = {n}");
            assert_eq!(order(&k.units_mod_n), mu);
            assert_eq!(order(&k.class_torsion), tors as u64);
            assert_eq!(order(&k.h2), (h / powers) as u64);
            assert_eq!(order(&k.h1), mu * tors as u64);
            assert!(k.to_report().pass());
        }
    }
}

#[test]
fn poitou_tate_orders() {
    for (d, n) in [(-20, 2), (-23, 3), (-84, 2), (-84, 4), (-47, 5), (-4, 3)] {
        let r = poitou_tate_order_check(d, n).unwrap();
        assert!(r.pass(), "d = {d}, n = {n}");
    }
    let k = kummer_cohomology(-23, 3).unwrap();
    assert_eq!(k.h2, FgAbGroup::cyclic(3));
}

#[test]
fn theorem_on_divisibility_closed_levels() {
    for d in [-20, -4] {
        let t = verify_main_theorem(d, &[2, 4, 8], 500).unwrap();
        assert!(t.pass(), "d = {d}");
        assert_eq!(t.verified.pi0_class_group, class_group(d).unwrap().group);
        assert!(t.predicted.iter().all(|p| !p.verified));
        assert!(t.artin.is_none());
    }
    let t = verify_main_theorem(-20, &[2, 4, 8], 500).unwrap();
    assert_eq!(t.verified.pi0_system.limit, Some(FgAbGroup::cyclic(2)));
    assert_eq!(t.verified.pi1_units, profinite_complete(&FgAbGroup::cyclic(2)));
}

#[test]
fn theorem_with_odd_levels_sees_only_pi0() {
    let t = verify_main_theorem(-23, &[3, 9], 1000).unwrap();
    assert!(t.verified.pi0_agree);
    assert_eq!(t.verified.pi0_system.limit, Some(FgAbGroup::cyclic(3)));
    assert!(t.artin.as_ref().unwrap().pass());
    assert!(matches!(verify_main_theorem(-23, &[], 10), Err(CftError::NoLevels)));
    assert!(matches!(verify_main_theorem(-23, &[1, 2], 10), Err(CftError::BadLevel(1))));
}

fn roots_mod(poly: &[i64], p: i64) -> usize {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(p)) == 0)
        .count()
}

/// Whether `a x^2 + b xy + c y^2 = p` has an integer solution.
fn represents(a: i64, b: i64, c: i64, p: i64) -> bool {
    let r = (p as f64).sqrt() as i64 + 2;
    (-r..=r).any(|x| (-r..=r).any(|y| a * x * x + b * x * y + c * y * y == p))
}

#[test]
fn splitting_law_against_root_counts() {
    let fields = curated_fields();
    assert!(fields.iter().any(|f| f.d == -23) && fields.iter().any(|f| f.d == -31));
    let cubic = &fields.iter().find(|f| f.d == -23).unwrap().poly;
    assert_eq!(roots_mod(cubic, 59), 3);
    assert_eq!(roots_mod(cubic, 2), 0);
    for p in primes_below(600).into_iter().map(|p| p as i64).filter(|&p| p != 23) {
        let want = if represents(1, 1, 6, p) {
            3
        } else if represents(2, 1, 3, p) {
            0
        } else {
            1
        };
        assert_eq!(roots_mod(cubic, p), want, "p = {p}");
    }
    for f in fields {
        let r = artin_pi0_check(f.d, &f.poly, 3000).unwrap();
        assert!(r.pass(), "d = {}", f.d);
        assert_eq!(r.tested, r.principal_split + r.nonprincipal_split + r.inert);
    }
    assert!(matches!(artin_pi0_check(-4, &[1, 0, 1], 100), Err(CftError::NotCurated(_))));
}

#[test]
fn trivial_modulus_recovers_picard_groupoid() {
    for d in ACCEPTANCE {
        let pic = pic_homotopy(d, true).unwrap();
        let idele = idele_class_data(d, &Ideal::unit(), GUARD).unwrap();
        assert_eq!(pic.pi0, idele.pi0, "d = {d}");
        assert_eq!(pic.pi1, idele.pi1, "d = {d}");
        assert_eq!(pic.pi1, FgAbGroup::cyclic(unit_count(d) as i64));
        let (a, b) = pic.completed.unwrap();
        assert_eq!(a, profinite_complete(&pic.pi0));
        assert_eq!(b, profinite_complete(&pic.pi1));
    }
}

#[test]
fn gaussian_levels() {
    let i = dcft_core::numberfield::ImagQuadField::new(-4).unwrap();
    let one_plus_i = Ideal::from_gens(&i, &[dcft_core::numberfield::Elem::new(1, 1)]).unwrap();
    assert_eq!(idele_class_data(-4, &one_plus_i, GUARD).unwrap().pi1, FgAbGroup::cyclic(4));
    let five = idele_class_data(-4, &Ideal::rational(5), GUARD).unwrap();
    assert_eq!(five.pi0, FgAbGroup::cyclic(4));
    assert_eq!(five.pi1, FgAbGroup::zero());
}

#[test]
fn norm_and_transfer_on_small_pairs() {
    let pairs: Vec<_> = catalog_pairs(6)
        .into_iter()
        .filter(|p| p.label.starts_with("C4 ") || p.label.starts_with("S3 "))
        .collect();
    assert!(pairs.iter().any(|p| p.label.starts_with("C4 ") && p.subgroup.len() == 2));
    assert!(pairs.iter().any(|p| p.label.starts_with("S3 ") && p.subgroup.len() == 3));
    let r = norm_transfer_report(&pairs, 2, GUARD).unwrap();
    assert!(r.pass());
    assert!(!r.checks.is_empty());
}

#[test]
fn report_json_schema() {
    let r = verify_main_theorem(-20, &[2, 4, 8], 100).unwrap().to_report();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema_version"], serde_json::json!(r.schema_version));
    assert_eq!(v["field"], "Q(sqrt -20)");
    for key in ["kind", "verified", "predicted", "checks", "provenance"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"].is_boolean() && c["provenance"].is_string()));
    assert_eq!(r.to_json(), verify_main_theorem(-20, &[2, 4, 8], 100).unwrap().to_report().to_json());
}
