use corepoint::arith::{point, rat};
use corepoint::groups::{self, act, PermGroup};
use corepoint::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn act_moves_index_i_to_g_of_i() {
    let id = groups::identity(3);
    assert_eq!(act(&id, &point(&[1, 2, 3])).unwrap(), point(&[1, 2, 3]));
    let g = groups::shift(5);
    assert_eq!(act(&g, &point(&[1, 0, 0, 0, 0])).unwrap(), point(&[0, 1, 0, 0, 0]));
    let mut z = point(&[3, -1, 4, 1, -5]);
    let orig = z.clone();
    for _ in 0..5 {
        z = act(&g, &z).unwrap();
    }
    assert_eq!(z, orig);
}

#[test]
fn act_rejects_wrong_dimension() {
    let err = act(&groups::shift(5), &point(&[1, 2])).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }));
}

#[test]
fn orbits() {
    let c5 = PermGroup::cyclic(5);
    assert_eq!(c5.orbit(&point(&[1, 0, 0, 0, 0])).unwrap().len(), 5);
    assert_eq!(c5.orbit(&point(&[1, 1, 1, 1, 1])).unwrap(), vec![point(&[1, 1, 1, 1, 1])]);
    let mut o = PermGroup::symmetric(3).orbit(&point(&[1, 1, 0])).unwrap();
    o.sort();
    assert_eq!(o, vec![point(&[0, 1, 1]), point(&[1, 0, 1]), point(&[1, 1, 0])]);
}

#[test]
fn group_orders() {
    assert_eq!(PermGroup::cyclic(7).order().unwrap(), 7);
    assert_eq!(PermGroup::dihedral(5).order().unwrap(), 10);
    assert_eq!(PermGroup::symmetric(4).order().unwrap(), 24);
    assert_eq!(PermGroup::trivial(3).order().unwrap(), 1);
}

#[test]
fn element_cap_is_enforced() {
    let g = PermGroup::symmetric(6).with_cap(100);
    assert_eq!(g.order().unwrap_err(), Error::ElementCap(100));
}

#[test]
fn cycle_notation_is_one_based() {
    let d5 = PermGroup::from_cycles("(1,2,3,4,5),(1,4)(2,3)", None).unwrap();
    assert_eq!(d5.degree(), 5);
    assert_eq!(d5.order().unwrap(), 10);
    assert_eq!(d5, PermGroup::dihedral(5));
    assert!(PermGroup::from_cycles("(1,1)", None).is_err());
}

#[test]
fn json_round_trip() {
    let g = PermGroup::dihedral(5);
    let back = PermGroup::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn fixed_space_projection() {
    let c5 = PermGroup::cyclic(5);
    assert_eq!(c5.project_fixed(&point(&[1, 0, 0, 0, 0])).unwrap(), vec![rat(1, 5); 5]);
    let ones = c5.project_fixed(&point(&[1, 1, 1, 1, 1])).unwrap();
    assert_eq!(ones, vec![rat(1, 1); 5]);
    let c4 = PermGroup::cyclic(4);
    assert_eq!(c4.project_fixed(&point(&[1, -1, 1, -1])).unwrap(), vec![rat(0, 1); 4]);
}

#[test]
fn layers() {
    let c5 = PermGroup::cyclic(5);
    assert_eq!(c5.layer_of(&point(&[1, 0, 0, 0, 0])).unwrap(), BigInt::from(1));
    assert_eq!(c5.layer_of(&point(&[1, 1, 1, 0, -2])).unwrap(), BigInt::from(1));
    assert_eq!(c5.layer_of(&point(&[2, 1, 1, -1, -1])).unwrap(), BigInt::from(2));
    let split = PermGroup::new(4, vec![vec![1, 0, 2, 3]]).unwrap();
    assert_eq!(split.layer_of(&point(&[1, 0, 0, 0])).unwrap_err(), Error::NotTransitive);
}

#[test]
fn standard_cyclic_recognition() {
    assert_eq!(PermGroup::cyclic(6).standard_cyclic_order(), Some(6));
    assert_eq!(PermGroup::dihedral(5).standard_cyclic_order(), None);
    assert!(PermGroup::symmetric(4).is_full_symmetric());
}

fn small_point(d: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-9i64..=9, d)
}

proptest! {
    #[test]
    fn orbit_is_invariant_and_divides_order(z in small_point(5)) {
        let g = PermGroup::dihedral(5);
        let z = point(&z);
        let mut o = g.orbit(&z).unwrap();
        o.sort();
        prop_assert!(o.contains(&z));
        prop_assert_eq!(10 % o.len(), 0);
        for gen in g.generators() {
            let mut o2 = g.orbit(&act(gen, &z).unwrap()).unwrap();
            o2.sort();
            prop_assert_eq!(&o2, &o);
        }
    }

    #[test]
    fn projection_is_idempotent_and_equivariant(z in small_point(4)) {
        let g = PermGroup::cyclic(4);
        let z = point(&z);
        let p = g.project_fixed(&z).unwrap();
        let k: BigInt = z.iter().sum();
        prop_assert_eq!(&p, &vec![BigRational::new(k, BigInt::from(4)); 4]);
        for gen in g.generators() {
            prop_assert_eq!(&g.project_fixed(&act(gen, &z).unwrap()).unwrap(), &p);
        }
    }

    #[test]
    fn layer_is_invariant(z in small_point(5)) {
        let g = PermGroup::cyclic(5);
        let z = point(&z);
        let k = g.layer_of(&z).unwrap();
        for gen in g.generators() {
            prop_assert_eq!(g.layer_of(&act(gen, &z).unwrap()).unwrap(), k.clone());
        }
    }
}
