use std::collections::BTreeSet;

use proptest::prelude::*;

use bidouble::classify::{self, det_a, sign_elimination_check};
use bidouble::cover;
use bidouble::curves::{enumerate_classes, filter_effective_against_nodal};
use bidouble::lattice::determinant;
use bidouble::{DivisorClass, SurfaceLattice};

fn lattice(n: usize) -> SurfaceLattice {
    let mut names = vec!["L".to_string()];
    names.extend((1..=n).map(|i| format!("E{i}")));
    SurfaceLattice::new("prop", names).unwrap()
}

fn class(n: usize) -> impl Strategy<Value = DivisorClass> {
    (-60i64..=60, prop::collection::vec(-60i64..=60, n)).prop_map(|(a, e)| DivisorClass::new(a, e))
}

fn three_classes() -> impl Strategy<Value = (usize, DivisorClass, DivisorClass, DivisorClass, i64)> {
    (0usize..=10).prop_flat_map(|n| (Just(n), class(n), class(n), class(n), -20i64..=20))
}

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn pairing_is_symmetric_and_bilinear((n, a, b, c, k) in three_classes()) {
        let lat = lattice(n);
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), lat.intersect(&b, &a).unwrap());
        let lhs = lat.intersect(&(&a + &b), &c).unwrap();
        prop_assert_eq!(lhs, lat.intersect(&a, &c).unwrap() + lat.intersect(&b, &c).unwrap());
        prop_assert_eq!(lat.intersect(&(k * &a), &b).unwrap(), k * lat.intersect(&a, &b).unwrap());
    }

    #[test]
    fn adjunction_parity((n, a, _b, _c, _k) in three_classes()) {
        let lat = lattice(n);
        let v = lat.self_int(&a).unwrap() + lat.k_degree(&a).unwrap();
        prop_assert_eq!(v.rem_euclid(2), 0);
        let pa = lat.arithmetic_genus(&a).unwrap();
        prop_assert_eq!(2 * pa - 2, v);
    }

    #[test]
    fn adjunction_parity_for_any_characteristic_canonical(
        (n, a, _b, _c, _k) in three_classes(),
        shift in prop::collection::vec(-3i64..=3, 11),
    ) {
        // any class with all-odd coefficients is characteristic for diag(1, -1, ...)
        let k = DivisorClass::new(2 * shift[0] + 1, (1..=n).map(|i| 2 * shift[i] + 1).collect());
        let lat = lattice(n).with_canonical(k).unwrap();
        let v = lat.self_int(&a).unwrap() + lat.k_degree(&a).unwrap();
        prop_assert_eq!(v.rem_euclid(2), 0);
    }

    #[test]
    fn riemann_roch_is_serre_symmetric((n, a, _b, _c, _k) in three_classes()) {
        let lat = lattice(n);
        let dual = lat.canonical() - &a;
        prop_assert_eq!(lat.riemann_roch_chi(&a).unwrap(), lat.riemann_roch_chi(&dual).unwrap());
        prop_assert_eq!(
            lat.riemann_roch_chi(&a).unwrap() + lat.arithmetic_genus(&a).unwrap(),
            lat.self_int(&a).unwrap() + 2
        );
    }

    #[test]
    fn enumeration_is_closed_under_permutation(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let lat = lattice(6);
        for (sq, kd) in [(-1, -1), (-2, 0)] {
            let all: BTreeSet<_> = enumerate_classes(&lat, sq, kd).unwrap().into_iter().collect();
            let moved: BTreeSet<_> = all.iter().map(|c| c.permute_exceptional(&perm).unwrap()).collect();
            prop_assert_eq!(&moved, &all);
        }
    }

    #[test]
    fn nodal_filter_is_idempotent_and_monotone(small in 0u8..16, extra in 0u8..16) {
        let fx = cover::inoue();
        let names = fx.config.nodal_names();
        let pick = |mask: u8| -> Vec<&str> {
            names.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, n)| *n).collect()
        };
        let (s, t) = (pick(small), pick(small | extra));
        let cs = fx.config.with_nodal_subset(&s);
        let ct = fx.config.with_nodal_subset(&t);
        for (sq, kd) in [(-1, -1), (-2, 0)] {
            let all = enumerate_classes(fx.surface(), sq, kd).unwrap();
            let once = filter_effective_against_nodal(&all, &cs);
            prop_assert_eq!(&filter_effective_against_nodal(&once, &cs), &once);
            let bigger: BTreeSet<_> = filter_effective_against_nodal(&all, &ct).into_iter().collect();
            let smaller: BTreeSet<_> = once.into_iter().collect();
            prop_assert!(bigger.is_subset(&smaller));
        }
    }

    #[test]
    fn det_a_matches_cofactor_expansion_for_large_odd_products(
        a in 0i64..500, b in 0i64..500, c in 0i64..500,
    ) {
        let m = [2 * a + 1, 2 * b + 1, 2 * c + 1];
        prop_assert_eq!(i128::from(det_a(m)), cofactor_det(m));
    }
}

/// Determinant of the intersection matrix with diagonal `-1`, expanded along
/// the first row.
fn cofactor_det(m: [i64; 3]) -> i128 {
    let a = [
        [-1i128, m[2] as i128, m[1] as i128],
        [m[2] as i128, -1, m[0] as i128],
        [m[1] as i128, m[0] as i128, -1],
    ];
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
    };
    a[0][0] * minor(0, 0) - a[0][1] * minor(0, 1) + a[0][2] * minor(0, 2)
}

#[test]
fn det_a_matches_cofactor_expansion_exhaustively() {
    let odd: Vec<i64> = (1..=15).step_by(2).collect();
    let mut trials = 0;
    for &x in &odd {
        for &y in &odd {
            for &z in &odd {
                let m = [x, y, z];
                assert_eq!(i128::from(det_a(m)), cofactor_det(m), "{m:?}");
                let mat = vec![vec![-1, z, y], vec![z, -1, x], vec![y, x, -1]];
                assert_eq!(determinant(&mat).unwrap(), cofactor_det(m));
                trials += 1;
            }
        }
    }
    assert_eq!(trials, 512);
}

#[test]
fn sign_elimination_sweep() {
    let mut trials = 0;
    for l in (0..=20).step_by(2) {
        for m in (-99..=99).step_by(2) {
            assert!(!sign_elimination_check(l, m), "l = {l}, m = {m}");
            trials += 1;
        }
    }
    assert!(trials >= 1000);
}

#[test]
fn m_filters_are_idempotent_and_traces_are_deterministic() {
    for k in classify::candidate_k_triples(7) {
        let first = classify::m_search(7, k);
        let again = classify::m_search(7, k);
        assert_eq!(first.rejected, again.rejected);
        for cand in &first.raw_accepted {
            assert_eq!(classify::check_m_triple(7, k, cand.m), Ok(*cand));
        }
        for rej in &first.rejected {
            let m = classify::internal(rej.m);
            assert_eq!(classify::check_m_triple(7, k, m), Err(rej.filter));
        }
    }
}
