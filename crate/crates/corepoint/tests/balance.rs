use corepoint::arith::{norm_sq, point, LatticePoint};
use corepoint::balance::{balance_point, has_zero_projection, log_map, reduce_min_norm, spread, LogLattice};
use corepoint::enumerate::canonical_form;
use corepoint::units::{bass_units, Normalizer, UnitElement};
use corepoint::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn golden() -> (f64, f64) {
    ((-1.0 + 5f64.sqrt()) / 2.0, (-1.0 - 5f64.sqrt()) / 2.0)
}

#[test]
fn log_map_examples() {
    assert!(log_map(&UnitElement::identity(5)).unwrap().iter().all(|x| x.abs() < TOL));
    let u = UnitElement::from_group_ring(&point(&[-1, 1, 0, 0, 1])).unwrap();
    let l = log_map(&u).unwrap();
    let (a, b) = golden();
    assert!((l[0] - (-1.0 + a).powi(2).ln()).abs() < TOL);
    assert!((l[1] - (-1.0 + b).powi(2).ln()).abs() < TOL);
    assert!((l[0] + l[1]).abs() < TOL);
    let li = log_map(&u.inv()).unwrap();
    assert!(l.iter().zip(&li).all(|(x, y)| (x + y).abs() < TOL));
}

#[test]
fn log_map_is_a_homomorphism() {
    let us = bass_units(7);
    let (u, v) = (&us[0], &us[1]);
    let luv = log_map(&u.mul(v)).unwrap();
    let (lu, lv) = (log_map(u).unwrap(), log_map(v).unwrap());
    for i in 0..luv.len() {
        assert!((luv[i] - lu[i] - lv[i]).abs() < 1e-8);
    }
    assert!(luv.iter().sum::<f64>().abs() < 1e-8);
}

#[test]
fn c5_lattice_constant() {
    let lat = LogLattice::from_normalizer(&Normalizer::cyclic(5)).unwrap();
    let (_, b) = golden();
    // (b - 1)^2 = 2 - 3b = (7 + 3 sqrt 5) / 2
    let d = (b - 1.0).powi(2);
    assert!((d - (2.0 - 3.0 * b)).abs() < TOL);
    assert!((lat.d_impl() - d).abs() < TOL);
    assert!((lat.d_impl() - 6.854_101_966_249_685).abs() < TOL);
}

#[test]
fn c7_lattice() {
    let lat = LogLattice::from_normalizer(&Normalizer::cyclic(7)).unwrap();
    assert_eq!(lat.rank(), 2);
    assert_eq!(lat.dimension(), 3);
    assert!(lat.is_full());
    assert!(lat.d_impl().is_finite());
}

#[test]
fn balancing_the_hard_point() {
    let norm = Normalizer::cyclic(5);
    let lat = LogLattice::from_normalizer(&norm).unwrap();
    let u = &norm.units()[0];
    let z = u.pow(10).apply(&point(&[1, 1, 1, 0, -2]));
    let b = balance_point(&z, &lat).unwrap();
    assert_eq!(b.unit.apply(&z), b.point);
    assert!(b.ratio <= b.d_impl);
    assert!(b.point.iter().all(|x| x.magnitude() <= &3u32.into()));
    let want = canonical_form(&norm, &point(&[1, 1, 1, 0, -2])).unwrap().point;
    assert_eq!(canonical_form(&norm, &b.point).unwrap().point, want);
}

#[test]
fn balanced_input_is_left_alone() {
    let lat = LogLattice::from_normalizer(&Normalizer::cyclic(5)).unwrap();
    let b = balance_point(&point(&[1, 0, 0, 0, 0]), &lat).unwrap();
    assert_eq!(b.exponents, vec![0]);
    assert_eq!(b.point, point(&[1, 0, 0, 0, 0]));
    assert!((b.ratio - 1.0).abs() < TOL);
}

#[test]
fn fixed_points_are_rejected() {
    let lat = LogLattice::from_normalizer(&Normalizer::cyclic(5)).unwrap();
    assert!(matches!(balance_point(&point(&[2; 5]), &lat), Err(Error::ZeroProjection(_))));
    assert!(has_zero_projection(&point(&[2; 5])));
    assert!(!has_zero_projection(&point(&[1, 0, 0, 0, 0])));
}

#[test]
fn reduce_examples() {
    let norm = Normalizer::cyclic(5);
    let r = reduce_min_norm(&point(&[13, 0, 8, 8, 0]), &norm, 2).unwrap();
    assert_eq!(r.witness.apply(&point(&[13, 0, 8, 8, 0])), r.point);
    assert_eq!(r.point, point(&[1, 0, 0, 0, 0]));

    let e1 = point(&[1, 0, 0, 0, 0]);
    assert_eq!(reduce_min_norm(&e1, &norm, 2).unwrap().point, e1);

    let z: LatticePoint = point(&[3, -1, 0, 2, -3]).iter().map(|x| x + 7).collect();
    let r = reduce_min_norm(&z, &norm, 2).unwrap();
    let k: BigInt = r.point.iter().sum();
    assert!(k >= BigInt::from(1) && k <= BigInt::from(5));
    assert!(norm_sq(&r.point) <= norm_sq(&z));
}

/// Layer residues up to sign are a normalizer invariant, so the Fibonacci
/// points split by parity of `j`.
#[test]
fn fibonacci_points_by_parity() {
    let norm = Normalizer::cyclic(5);
    let (mut a, mut b) = (1i64, 1i64);
    for j in 1..=20 {
        let p = point(&[b, 0, a, a, 0]);
        let r = reduce_min_norm(&p, &norm, 2).unwrap();
        let k: i64 = (b + 2 * a).rem_euclid(5);
        if j % 2 == 1 {
            assert!(k == 2 || k == 3);
            assert_eq!(norm_sq(&r.point), BigInt::from(2));
        } else {
            assert!(k == 1 || k == 4);
            assert_eq!(r.point, point(&[1, 0, 0, 0, 0]));
        }
        let c = b + a;
        a = b;
        b = c;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn balancing_certificate_c5(z in proptest::collection::vec(-40i64..=40, 5)) {
        let lat = LogLattice::from_normalizer(&Normalizer::cyclic(5)).unwrap();
        let z = point(&z);
        prop_assume!(!has_zero_projection(&z));
        let b = balance_point(&z, &lat).unwrap();
        prop_assert_eq!(b.unit.apply(&z), b.point.clone());
        prop_assert!(b.ratio <= b.d_impl * (1.0 + 1e-9));
        prop_assert!((spread(&b.point).unwrap() - b.ratio).abs() < 1e-9 * b.ratio);
    }

    #[test]
    fn balancing_certificate_c7(z in proptest::collection::vec(-20i64..=20, 7)) {
        let lat = LogLattice::from_normalizer(&Normalizer::cyclic(7)).unwrap();
        let z = point(&z);
        prop_assume!(!has_zero_projection(&z));
        let b = balance_point(&z, &lat).unwrap();
        prop_assert!(b.ratio <= b.d_impl * (1.0 + 1e-9));
    }

    #[test]
    fn reduction_never_grows(z in proptest::collection::vec(-30i64..=30, 5)) {
        let norm = Normalizer::cyclic(5);
        let z = point(&z);
        let r = reduce_min_norm(&z, &norm, 2).unwrap();
        prop_assert_eq!(r.witness.apply(&z), r.point.clone());
        r.witness.validate(norm.group()).unwrap();
        // compare against the layer-normalized input
        let k: BigInt = z.iter().sum();
        let s = ((&k - 1) % 5 + 5) % 5 + 1 - &k;
        let shifted: LatticePoint = z.iter().map(|x| x + &s / 5).collect();
        prop_assert!(norm_sq(&r.point) <= norm_sq(&shifted));
    }
}
