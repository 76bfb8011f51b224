use std::collections::BTreeSet;

use corepoint::arith::{norm_sq, point, LatticePoint};
use corepoint::balance::LogLattice;
use corepoint::enumerate::{
    canonical_form, canonical_form_with_radius, classes_to_json, default_c_const, enumerate_core_classes,
    layer_ball_points, norm_bound, EnumerateOptions,
};
use corepoint::geometry::is_core_point;
use corepoint::groups::{act, PermGroup};
use corepoint::units::{translation_equivalent, EquivalenceMove, Normalizer};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn c5() -> Normalizer {
    Normalizer::cyclic(5)
}

fn bound(k: i64) -> f64 {
    let lat = LogLattice::from_normalizer(&c5()).unwrap();
    norm_bound(&lat, &default_c_const(5).unwrap(), &BigInt::from(k)).unwrap()
}

#[test]
fn norm_bound_values() {
    // 1/5 + 48/5 + 48/5 * (7 + 3 sqrt 5) / 2
    let d = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
    let want = 0.2 + 9.6 + 9.6 * d;
    assert!((bound(1) - want).abs() < 1e-9);
    assert!((bound(1) - 75.599_378_876).abs() < 1e-6);
    // the unsimplified form (2/5) + (48/5)(1 + 2 - 3b) differs only in the
    // fixed part
    let b = (-1.0 - 5f64.sqrt()) / 2.0;
    assert!((0.4 + 9.6 * (1.0 + 2.0 - 3.0 * b) - (bound(1) + 0.2)).abs() < 1e-9);
    assert!(bound(0).is_finite() && bound(0) >= 0.0);
    let lat = LogLattice::from_normalizer(&c5()).unwrap();
    let zero_c = norm_bound(&lat, &BigRational::zero(), &BigInt::from(2)).unwrap();
    assert!((zero_c - 0.8).abs() < 1e-12);
    let c8 = LogLattice::from_normalizer(&Normalizer::cyclic(8)).unwrap();
    assert!(norm_bound(&c8, &default_c_const(5).unwrap(), &BigInt::from(1)).is_err());
}

#[test]
fn layer_ball_matches_brute_force() {
    for (d, k, m) in [(4usize, 1i64, 9i64), (5, 2, 8), (3, 0, 12)] {
        let got: BTreeSet<Vec<i64>> = layer_ball_points(d, k, m).into_iter().collect();
        let r = (m as f64).sqrt() as i64;
        let mut want = BTreeSet::new();
        let mut cur = vec![-r; d];
        loop {
            if cur.iter().sum::<i64>() == k && cur.iter().map(|x| x * x).sum::<i64>() <= m {
                want.insert(cur.clone());
            }
            let mut i = d;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if cur[i] < r {
                    cur[i] += 1;
                    break false;
                }
                cur[i] = -r;
            };
            if done {
                break;
            }
        }
        assert_eq!(got, want);
    }
}

#[test]
fn canonical_form_examples() {
    let norm = c5();
    let a = canonical_form(&norm, &point(&[3, 0, 2, 2, 0])).unwrap();
    let b = canonical_form(&norm, &point(&[1, 0, 1, 1, 0])).unwrap();
    assert_eq!(a.point, b.point);
    assert_eq!(a.witness.apply(&point(&[3, 0, 2, 2, 0])), a.point);
    let z = point(&[2, 1, 0, -1, -1]);
    let z1: LatticePoint = z.iter().map(|x| x + 1).collect();
    assert_eq!(canonical_form(&norm, &z).unwrap().point, canonical_form(&norm, &z1).unwrap().point);
    let gz = act(&corepoint::groups::shift(5), &z).unwrap();
    assert_eq!(canonical_form(&norm, &z).unwrap().point, canonical_form(&norm, &gz).unwrap().point);
}

#[test]
fn listed_points_have_distinct_canonical_forms() {
    let norm = c5();
    let listed = [
        [1, 0, 0, 0, 0],
        [1, 1, 0, 0, -1],
        [1, 1, 1, 0, -2],
        [2, 1, 0, -1, -1],
        [2, 1, -2, 0, 0],
        [1, 1, 0, 0, 0],
        [1, 1, 1, 0, -1],
        [2, 1, 0, 0, -1],
        [2, 1, 1, -1, -1],
        [2, 1, 1, -2, 0],
    ];
    let forms: BTreeSet<LatticePoint> = listed.iter().map(|p| canonical_form(&norm, &point(p)).unwrap().point).collect();
    assert_eq!(forms.len(), 10);
}

#[test]
fn layer_one_is_exhaustive_in_a_box() {
    let norm = c5();
    let g = norm.group().clone();
    let m = bound(1);
    let classes = enumerate_core_classes(&norm, 1, m, &EnumerateOptions::default()).unwrap();
    let canon: BTreeSet<LatticePoint> = classes.iter().map(|c| c.canonical.clone()).collect();
    assert_eq!(canon.len(), 5);
    // every core point with entries in [-8, 8] and the norm bound falls in a class
    let mut checked = 0;
    for raw in layer_ball_points(5, 1, m.floor() as i64) {
        if raw.iter().any(|x| x.abs() > 8) {
            continue;
        }
        let z = point(&raw);
        if is_core_point(&g, &z).unwrap() {
            checked += 1;
            assert!(canon.contains(&canonical_form(&norm, &z).unwrap().point), "{z:?}");
        }
    }
    let found: usize = classes.iter().map(|c| c.class_size_found).sum();
    assert_eq!(found, checked);
}

#[test]
fn classes_are_sound() {
    let norm = c5();
    let classes = enumerate_core_classes(&norm, 2, bound(2), &EnumerateOptions::default()).unwrap();
    assert_eq!(classes.len(), 5);
    let g = norm.group();
    for c in &classes {
        assert!(is_core_point(g, &c.canonical).unwrap());
        assert_eq!(c.norm_sq, norm_sq(&c.canonical));
        for (z, mv) in &c.witnesses {
            assert_eq!(&mv.apply(z), &c.canonical);
            mv.validate(g).unwrap();
        }
        // two stored members of one class and one layer are translation
        // equivalent only if equal
        for (i, (a, _)) in c.witnesses.iter().enumerate() {
            for (b, _) in &c.witnesses[i + 1..] {
                let (ka, kb): (BigInt, BigInt) = (a.iter().sum(), b.iter().sum());
                if ka == kb {
                    assert!(!translation_equivalent(g, a, b).unwrap());
                }
            }
        }
    }
    let sorted: Vec<_> = classes.iter().map(|c| (c.norm_sq.clone(), c.canonical.clone())).collect();
    let mut resorted = sorted.clone();
    resorted.sort();
    assert_eq!(sorted, resorted);
}

#[test]
fn subgroup_filter() {
    let norm = c5();
    let opts = EnumerateOptions {
        subgroup_filter: Some(PermGroup::dihedral(5)),
        ..EnumerateOptions::default()
    };
    let one = enumerate_core_classes(&norm, 1, bound(1), &opts).unwrap();
    let two = enumerate_core_classes(&norm, 2, bound(2), &opts).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(two.len(), 1);
    assert_eq!(one[0].canonical, canonical_form(&norm, &point(&[1, 0, 0, 0, 0])).unwrap().point);
    assert_eq!(two[0].canonical, canonical_form(&norm, &point(&[1, 1, 0, 0, 0])).unwrap().point);
}

#[test]
fn frozen_c5_canonical_points() {
    let norm = c5();
    let one: Vec<(LatticePoint, usize)> = enumerate_core_classes(&norm, 1, bound(1), &EnumerateOptions::default())
        .unwrap()
        .into_iter()
        .map(|c| (c.canonical, c.class_size_found))
        .collect();
    assert_eq!(
        one,
        vec![
            (point(&[0, 0, 0, 0, 1]), 25),
            (point(&[-1, 0, 0, 1, 1]), 80),
            (point(&[-2, 0, 1, 1, 1]), 60),
            (point(&[-1, -1, 0, 1, 2]), 80),
            (point(&[-2, 0, 0, 2, 1]), 60),
        ]
    );
}

#[test]
fn json_output() {
    let classes = enumerate_core_classes(&c5(), 1, 3.0, &EnumerateOptions::default()).unwrap();
    let v = classes_to_json(&classes);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), classes.len());
    for item in arr {
        for key in ["canonical", "layer", "norm_sq", "class_size_found"] {
            assert!(item.get(key).is_some());
        }
    }
}

#[test]
fn budget_is_enforced() {
    let opts = EnumerateOptions {
        budget: 10,
        ..EnumerateOptions::default()
    };
    assert!(matches!(
        enumerate_core_classes(&c5(), 1, bound(1), &opts),
        Err(corepoint::Error::BudgetExceeded(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn canonical_form_is_move_invariant(
        z in proptest::collection::vec(-3i64..=3, 5),
        pick in 0usize..8,
        inv in proptest::bool::ANY,
        shift in -2i64..=2,
    ) {
        let norm = c5();
        let z = point(&z);
        let gens = norm.generators();
        let mv = gens[pick % gens.len()].to_move();
        let mv = if inv { mv.inverse() } else { mv };
        let mv = mv.then(&EquivalenceMove::translation(vec![BigInt::from(shift); 5]));
        let w = mv.apply(&z);
        let (a, b) = (canonical_form(&norm, &z).unwrap(), canonical_form(&norm, &w).unwrap());
        prop_assert_eq!(&a.point, &b.point);
        prop_assert_eq!(a.witness.apply(&z), a.point.clone());
        let c = canonical_form_with_radius(&norm, &z, 3).unwrap();
        prop_assert_eq!(c.point, a.point);
    }
}
