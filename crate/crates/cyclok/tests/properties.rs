use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cyclok::collections::{line_bundle_class, schur_class, schur_evaluate};
use cyclok::congruence::{hook_content_rank, reduced_gram};
use cyclok::localization::{build_space, Localizer, SpaceModel};
use cyclok::rootdata::{construct_t0, TorusElement};
use cyclok::Cyclotomic;

fn setup(s: &str) -> (SpaceModel, TorusElement) {
    let d = s.parse().unwrap();
    (build_space(&d).unwrap(), construct_t0(&d).unwrap())
}

fn integral_element(m: usize, coeffs: &[i64]) -> Cyclotomic {
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| &Cyclotomic::zeta_pow(m, j as i64) * &Cyclotomic::from_int(c))
        .fold(Cyclotomic::zero(), |acc, x| &acc + &x)
}

/// Semistandard tableaux of shape `lambda` with entries in `1..=k`, filled row by row.
fn count_ssyt(lambda: &[u32], k: u32) -> u64 {
    fn fill(lambda: &[u32], k: u32, rows: &mut Vec<Vec<u32>>, row: usize) -> u64 {
        if row == lambda.len() {
            return 1;
        }
        if rows[row].len() == lambda[row] as usize {
            return fill(lambda, k, rows, row + 1);
        }
        let col = rows[row].len();
        let left = rows[row].last().copied().unwrap_or(1);
        let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
        let mut total = 0;
        for x in left.max(above)..=k {
            rows[row].push(x);
            total += fill(lambda, k, rows, row);
            rows[row].pop();
        }
        total
    }
    let parts: Vec<u32> = lambda.iter().copied().filter(|&x| x > 0).collect();
    let mut rows = vec![Vec::new(); parts.len()];
    fill(&parts, k, &mut rows, 0)
}

fn partition(k: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, k).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

#[test]
fn ssyt_counter_matches_small_cases() {
    assert_eq!(count_ssyt(&[1], 3), 3);
    assert_eq!(count_ssyt(&[2], 2), 3);
    assert_eq!(count_ssyt(&[1, 1], 3), 3);
    assert_eq!(count_ssyt(&[2, 1], 3), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hermitian_on_projective(n in 2usize..7, a in -20i64..20, b in -20i64..20) {
        let (s, t) = setup(&format!("projective:{n}"));
        let loc = Localizer::new(&s, &t).unwrap();
        let v = line_bundle_class(&s, &t, &[a]).unwrap();
        let w = line_bundle_class(&s, &t, &[b]).unwrap();
        prop_assert_eq!(loc.pairing(&v, &w).unwrap(), loc.pairing(&w, &v).unwrap().conjugate());
    }

    #[test]
    fn line_classes_are_periodic(n in 2usize..7, a in -20i64..20, j in -3i64..4) {
        let (s, t) = setup(&format!("projective:{n}"));
        let period = t.order() as i64;
        prop_assert_eq!(
            line_bundle_class(&s, &t, &[a]).unwrap().values,
            line_bundle_class(&s, &t, &[a + j * period]).unwrap().values
        );
    }

    #[test]
    fn hirzebruch_lines_are_periodic(a in -6i64..6, b in -6i64..6) {
        let (s, t) = setup("hirzebruch:2");
        let period = t.order() as i64;
        prop_assert_eq!(
            line_bundle_class(&s, &t, &[a, b]).unwrap().values,
            line_bundle_class(&s, &t, &[a + period, b - period]).unwrap().values
        );
    }

    #[test]
    fn central_characters_multiply(a in -10i64..10, b in -10i64..10) {
        let (s, t) = setup("grassmannian:2:5");
        let ca = line_bundle_class(&s, &t, &[a]).unwrap().metadata.central.unwrap();
        let cb = line_bundle_class(&s, &t, &[b]).unwrap().metadata.central.unwrap();
        let cab = line_bundle_class(&s, &t, &[a + b]).unwrap().metadata.central.unwrap();
        prop_assert_eq!(ca.mul(&cb), cab);
    }

    #[test]
    fn tensor_multiplies_schur_characters(l in partition(2, 3), m in partition(2, 3)) {
        let (s, t) = setup("grassmannian:2:5");
        let v = schur_class(&s, &t, &l).unwrap();
        let w = schur_class(&s, &t, &m).unwrap();
        let vw = v.tensor(&w);
        prop_assert_eq!(
            vw.metadata.central,
            Some(v.metadata.central.clone().unwrap().mul(w.metadata.central.as_ref().unwrap()))
        );
    }

    #[test]
    fn reduction_is_a_ring_map(
        (p, e) in prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]),
        xs in prop::collection::vec(-9i64..9, 1..10),
        ys in prop::collection::vec(-9i64..9, 1..10),
    ) {
        let m = p.pow(e) as usize;
        let x = integral_element(m, &xs);
        let y = integral_element(m, &ys);
        let rx = x.reduce_mod_p(p).unwrap();
        let ry = y.reduce_mod_p(p).unwrap();
        prop_assert_eq!((&x + &y).reduce_mod_p(p).unwrap(), (rx + ry) % p);
        prop_assert_eq!((&x * &y).reduce_mod_p(p).unwrap(), (rx * ry) % p);
        prop_assert_eq!(x.conjugate().reduce_mod_p(p).unwrap(), rx);
    }

    #[test]
    fn reduced_gram_is_symmetric(degrees in prop::collection::vec(-12i64..12, 2..6)) {
        let (s, t) = setup("projective:4");
        let loc = Localizer::new(&s, &t).unwrap();
        let classes: Vec<_> = degrees
            .iter()
            .map(|&a| line_bundle_class(&s, &t, &[a]).unwrap())
            .collect();
        let g = reduced_gram(&loc.gram(&classes).unwrap(), 2).unwrap();
        for i in 0..g.len() {
            for j in 0..g.len() {
                prop_assert_eq!(g[i][j], g[j][i]);
            }
        }
    }

    #[test]
    fn hook_content_counts_tableaux(k in 1usize..4, l in partition(3, 4), extra in 0usize..4) {
        let l: Vec<u32> = l.into_iter().take(k).collect();
        let n = k + extra;
        prop_assert_eq!(hook_content_rank(&l, n), count_ssyt(&l, n as u32));
    }

    #[test]
    fn schur_at_ones_is_rank(k in 1usize..4, l in partition(3, 4)) {
        let l: Vec<u32> = l.into_iter().take(k).collect();
        let ones = vec![Cyclotomic::one(); k];
        let rank = BigRational::from_integer(BigInt::from(hook_content_rank(&l, k)));
        prop_assert_eq!(schur_evaluate(&l, &ones), Cyclotomic::from_rational(rank));
    }

    #[test]
    fn galois_integrality_on_g24(l in partition(2, 6), m in partition(2, 6)) {
        let (s, t) = setup("grassmannian:2:4");
        let loc = Localizer::new(&s, &t).unwrap();
        let v = schur_class(&s, &t, &l).unwrap();
        let w = schur_class(&s, &t, &m).unwrap();
        prop_assert!(loc.pairing(&v, &w).unwrap().to_integer().is_some());
    }
}
