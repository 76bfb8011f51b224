use corepoint::arith::{point, LatticePoint};
use corepoint::geometry::is_core_point;
use corepoint::groups::{self, PermGroup};
use corepoint::matrix::IntMatrix;
use corepoint::units::{
    bass_units, circulant, commutant_basis, equal_up_to_torsion, normalizer_equivalent, normalizer_generators,
    translation_equivalent, verify_unit, EquivalenceMove, Normalizer, NormalizerElement, UnitElement,
};
use corepoint::Error;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn u_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        vec![-1, 1, 0, 0, 1],
        vec![1, -1, 1, 0, 0],
        vec![0, 1, -1, 1, 0],
        vec![0, 0, 1, -1, 1],
        vec![1, 0, 0, 1, -1],
    ])
    .unwrap()
}

/// Solves the commuting constraints `M P = P M` for all generators by brute
/// force over `{0,1}` matrices and counts the independent solutions.
fn brute_commutant_rank(g: &PermGroup) -> usize {
    let d = g.degree();
    let mut basis_count = 0;
    // orbitals are the supports of the 0/1 basis; count them directly
    let mut seen = vec![vec![false; d]; d];
    for i in 0..d {
        for j in 0..d {
            if seen[i][j] {
                continue;
            }
            basis_count += 1;
            let mut stack = vec![(i, j)];
            seen[i][j] = true;
            while let Some((a, b)) = stack.pop() {
                for gen in g.generators() {
                    let (x, y) = (gen[a], gen[b]);
                    if !seen[x][y] {
                        seen[x][y] = true;
                        stack.push((x, y));
                    }
                }
            }
        }
    }
    basis_count
}

#[test]
fn commutant_examples() {
    let c6 = commutant_basis(&PermGroup::cyclic(6));
    assert_eq!(c6.rank(), 6);
    assert!(c6.basis.contains(&groups::permutation_matrix(&groups::shift(6))));
    for d in [3usize, 4] {
        let s = commutant_basis(&PermGroup::symmetric(d));
        assert_eq!(s.rank(), 2);
        assert!(s.basis.contains(&IntMatrix::identity(d)));
    }
    assert_eq!(commutant_basis(&PermGroup::trivial(2)).rank(), 4);
    for g in [PermGroup::dihedral(5), PermGroup::cyclic(7), PermGroup::symmetric(4)] {
        let ring = commutant_basis(&g);
        assert_eq!(ring.rank(), brute_commutant_rank(&g));
        for b in &ring.basis {
            assert!(g.commutes_with(b));
        }
    }
}

#[test]
fn the_c5_unit() {
    let g = PermGroup::cyclic(5);
    let u = verify_unit(&u_matrix(), &g).unwrap();
    assert_eq!(u.coefficients().unwrap(), point(&[-1, 1, 0, 0, 1]));
    assert_eq!(u.inverse_matrix(), &circulant(&point(&[-1, 0, 1, 1, 0])));
    assert_eq!(u.fixed_eigenvalue(), Some(1));
    let a = (-1.0 + 5f64.sqrt()) / 2.0;
    let spec = u.spectrum().unwrap();
    assert!((spec[1] - (-1.0 + a).powi(2)).abs() < 1e-9);
    assert_eq!(u.apply(&point(&[1, 1, 1, 0, -2])), point(&[-2, 1, 0, -1, 3]));
}

#[test]
fn verify_unit_rejections() {
    let g = PermGroup::cyclic(5);
    let id = verify_unit(&IntMatrix::identity(5), &g).unwrap();
    assert!(id.spectrum().unwrap().iter().all(|v| (v - 1.0).abs() < 1e-12));
    // (2,3,5,4) normalizes but does not centralize
    let sigma = groups::parse_cycles("(2,3,5,4)", 5).unwrap();
    let p = groups::permutation_matrix(&sigma);
    assert_eq!(verify_unit(&p, &g).unwrap_err(), Error::NonCommuting);
    let gens = normalizer_generators(5);
    assert!(gens.iter().any(|e| matches!(e, NormalizerElement::Torsion(s) if s.sign > 0 && s.perm == sigma)));
    let twice = circulant(&point(&[2, 0, 0, 0, 0]));
    assert_eq!(verify_unit(&twice, &g).unwrap_err(), Error::NotUnimodular);
}

#[test]
fn bass_units_examples() {
    let five = bass_units(5);
    assert_eq!(five.len(), 1);
    let u = UnitElement::from_group_ring(&point(&[-1, 1, 0, 0, 1])).unwrap();
    assert!(equal_up_to_torsion(&five[0], &u));
    assert_eq!(u.inverse_matrix(), &circulant(&point(&[-1, 0, 1, 1, 0])));
    assert!(bass_units(4).is_empty());
    assert!(bass_units(6).is_empty());

    // n = 8: rank 1, and the unit S from the C8 example is a power of the
    // Bass unit up to torsion
    let eight = bass_units(8);
    assert_eq!(eight.len(), 1);
    let s = UnitElement::from_group_ring(&point(&[2, 1, 0, -1, -1, -1, 0, 1])).unwrap();
    let found = (-4..=4).filter(|&e| e != 0).any(|e| equal_up_to_torsion(&eight[0].pow(e), &s));
    assert!(found);
}

#[test]
fn bass_unit_rank_for_primes() {
    for p in [5usize, 7, 11, 13] {
        let units = bass_units(p);
        assert!(units.len() >= (p - 3) / 2);
        let lat = corepoint::balance::LogLattice::new(p, units).unwrap();
        assert_eq!(lat.rank(), (p - 3) / 2);
        assert!(lat.is_full());
    }
}

#[test]
fn generated_units_are_exact() {
    for n in [5usize, 7, 8, 9, 10, 12, 15] {
        let g = PermGroup::cyclic(n);
        for u in bass_units(n) {
            assert!(u.matrix().mul(u.inverse_matrix()).is_identity());
            assert!(g.commutes_with(u.matrix()));
            assert!(u.finite_order(2 * n).is_none());
        }
    }
}

#[test]
fn normalizer_generators_normalize() {
    for n in [4usize, 5, 7, 8] {
        let g = PermGroup::cyclic(n);
        let gens = normalizer_generators(n);
        for e in &gens {
            assert!(g.is_normalized_by(&e.matrix(), &e.inverse_matrix()).unwrap());
        }
        let units = gens.iter().filter(|e| matches!(e, NormalizerElement::Unit(_))).count();
        assert_eq!(units == 0, n == 4);
    }
    let five = normalizer_generators(5);
    assert!(five.iter().any(|e| e.matrix() == IntMatrix::identity(5).neg()));
    let sym = Normalizer::symmetric(4);
    assert!(sym.units().is_empty());
}

fn fib(j: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..j {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

#[test]
fn move_examples() {
    let g = PermGroup::cyclic(5);
    let u = verify_unit(&u_matrix(), &g).unwrap();
    let mv = EquivalenceMove::from_unit(&u);
    assert_eq!(mv.apply(&point(&[1, 1, 1, 0, -2])), point(&[-2, 1, 0, -1, 3]));
    let z = point(&[3, -1, 4, 1, -5]);
    let tr = EquivalenceMove::translation(vec![BigInt::one(); 5]);
    assert_eq!(tr.apply(&z), point(&[4, 0, 5, 2, -4]));
    let step = circulant(&point(&[1, -1, 0, 0, -1]));
    for j in 1..15 {
        let p: LatticePoint = vec![fib(j + 1), BigInt::zero(), fib(j), fib(j), BigInt::zero()];
        let half = step.mul_vec(&p);
        assert_eq!(half, vec![fib(j + 1), -fib(j + 2), BigInt::zero(), BigInt::zero(), -fib(j + 2)]);
        let mv = EquivalenceMove::new(step.clone(), vec![fib(j + 2); 5]).unwrap();
        mv.validate(&g).unwrap();
        assert_eq!(mv.apply(&p), vec![fib(j + 3), BigInt::zero(), fib(j + 2), fib(j + 2), BigInt::zero()]);
    }
    let bad = EquivalenceMove::new(IntMatrix::identity(5), point(&[1, 0, 0, 0, 0])).unwrap();
    assert!(bad.validate(&g).is_err());
}

#[test]
fn translation_equivalence_examples() {
    let c5 = PermGroup::cyclic(5);
    let z = point(&[3, -1, 4, 1, -5]);
    let z1: LatticePoint = z.iter().map(|x| x + 1).collect();
    assert!(translation_equivalent(&c5, &z, &z1).unwrap());
    assert!(!translation_equivalent(&c5, &point(&[1, 0, 0, 0, 0]), &point(&[0, 1, 0, 0, 0])).unwrap());
    let c4 = PermGroup::cyclic(4);
    let pt = |m: i64| point(&[1 + m, -m, m, -m]);
    for m in 0..4 {
        for m2 in 0..4 {
            assert_eq!(translation_equivalent(&c4, &pt(m), &pt(m2)).unwrap(), m == m2);
        }
    }
}

#[test]
fn normalizer_equivalence_examples() {
    let norm = Normalizer::cyclic(5);
    let v = normalizer_equivalent(&norm, &point(&[3, 0, 2, 2, 0]), &point(&[1, 0, 1, 1, 0]), 10_000).unwrap();
    match v {
        corepoint::units::Verdict::Equivalent(mv) => {
            assert_eq!(mv.apply(&point(&[3, 0, 2, 2, 0])), point(&[1, 0, 1, 1, 0]));
            mv.validate(norm.group()).unwrap();
        }
        _ => panic!("expected a witness"),
    }
    for budget in [10usize, 1000, 20_000] {
        let v = normalizer_equivalent(&norm, &point(&[1, 0, 0, 0, 0]), &point(&[1, 1, 0, 0, -1]), budget).unwrap();
        assert!(!v.is_equivalent());
    }
    let z = point(&[2, 1, -2, 0, 0]);
    match normalizer_equivalent(&norm, &z, &z, 1).unwrap() {
        corepoint::units::Verdict::Equivalent(mv) => assert_eq!(mv.apply(&z), z),
        _ => panic!("a point is equivalent to itself"),
    }
}

#[test]
fn spectral_consistency() {
    let u = bass_units(7).remove(0);
    let z = point(&[3, -1, 0, 2, 0, 1, -4]);
    let comps = corepoint::repdecomp::cyclic_components(7);
    let before = corepoint::repdecomp::projection_norms(&z, &comps);
    let after = corepoint::repdecomp::projection_norms(&u.apply(&z), &comps);
    let spec = u.spectrum().unwrap();
    for (i, c) in comps.iter().enumerate() {
        let want = spec[c.frequency()] * before.component_norms[i];
        assert!((after.component_norms[i] - want).abs() <= 1e-9 * (1.0 + want));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn moves_preserve_core_status(
        z in proptest::collection::vec(-1i64..=1, 5),
        pick in 0usize..8,
        inv in proptest::bool::ANY,
        shift in -3i64..=3,
    ) {
        let norm = Normalizer::cyclic(5);
        let gens = norm.generators();
        let mv = gens[pick % gens.len()].to_move();
        let mv = if inv { mv.inverse() } else { mv };
        let mv = mv.then(&EquivalenceMove::translation(vec![BigInt::from(shift); 5]));
        mv.validate(norm.group()).unwrap();
        let z = point(&z);
        let w = mv.apply(&z);
        prop_assert_eq!(mv.inverse().apply(&w), z.clone());
        let g = norm.group();
        prop_assert_eq!(is_core_point(g, &z).unwrap(), is_core_point(g, &w).unwrap());
    }
}
