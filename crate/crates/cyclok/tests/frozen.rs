//! Values computed by hand or by independent enumeration, frozen.

use num_bigint::BigInt;
use num_rational::BigRational;

use cyclok::collections::{line_bundle_class, quadric_collection, schur_evaluate};
use cyclok::congruence::{hook_content_rank, LineTable, OrthonormalBasis};
use cyclok::localization::{build_space, euler_characteristic, lefschetz_coefficients, Localizer};
use cyclok::rootdata::{build_root_system, construct_t0, RootKind};
use cyclok::Cyclotomic;

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[test]
fn p1_pairings() {
    let d = "projective:2".parse().unwrap();
    let s = build_space(&d).unwrap();
    let t = construct_t0(&d).unwrap();
    assert_eq!(t.order(), 2);
    assert_eq!(
        lefschetz_coefficients(&s, &t).unwrap(),
        vec![q(1, 2), q(1, 2)]
    );
    let loc = Localizer::new(&s, &t).unwrap();
    let o = line_bundle_class(&s, &t, &[0]).unwrap();
    let o1 = line_bundle_class(&s, &t, &[1]).unwrap();
    assert!(loc.pairing(&o, &o).unwrap().is_one());
    assert!(loc.pairing(&o, &o1).unwrap().is_zero());
    assert!(loc.pairing(&o1, &o1).unwrap().is_one());
    assert!(euler_characteristic(&s, &t, &o1).unwrap().is_zero());
}

#[test]
fn p2_coefficients_are_one_third() {
    let d = "projective:3".parse().unwrap();
    let s = build_space(&d).unwrap();
    let t = construct_t0(&d).unwrap();
    let z = Cyclotomic::zeta(3);
    let norm = &(&Cyclotomic::one() - &z) * &(&Cyclotomic::one() - &z.pow(2));
    assert_eq!(norm, Cyclotomic::from_int(3));
    for c in lefschetz_coefficients(&s, &t).unwrap() {
        assert_eq!(c, q(1, 3));
    }
}

#[test]
fn schur_21_matches_tableau_sum() {
    // s_{21}(x, y) = x²y + xy² over the two tableaux of shape (2,1) in two letters.
    let x = Cyclotomic::one();
    let y = Cyclotomic::zeta(4);
    let by_tableaux = &(&(&x * &x) * &y) + &(&x * &(&y * &y));
    assert_eq!(by_tableaux, &Cyclotomic::zeta(4) - &Cyclotomic::one());
    assert_eq!(schur_evaluate(&[2, 1], &[x, y]), by_tableaux);
    assert_eq!(hook_content_rank(&[2, 1], 2), 2);
}

#[test]
fn e6_has_72_roots() {
    let rs = build_root_system(RootKind::E6, 6).unwrap();
    assert_eq!(rs.roots.len(), 72);
    assert_eq!(rs.positive_roots.len(), 36);
}

#[test]
fn cyclotomic_reduction_example() {
    let z = Cyclotomic::zeta(9);
    let x = &(&Cyclotomic::from_int(2) + &(&Cyclotomic::from_int(3) * &z)) + &z.pow(2);
    assert_eq!(x.reduce_mod_p(3).unwrap(), 0);
    assert_eq!(Cyclotomic::zeta(4).reduce_mod_p(2).unwrap(), 1);
}

#[test]
fn q4_spinor_has_no_line_bundle_reduction() {
    let c = quadric_collection(4).unwrap();
    let basis = OrthonormalBasis::new(&c.space, &c.t0, &c.classes).unwrap();
    let table = LineTable::build(&basis, 2, c.t0.order() as i64).unwrap();
    let plus = &c.classes[1];
    let red =
        cyclok::congruence::reduce_coefficients(&basis.coefficients(plus).unwrap(), 2).unwrap();
    assert_eq!(table.lookup(&red).unwrap(), None);
}
