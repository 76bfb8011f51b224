//! Units of the integral group ring that commute with the cyclic action.
//!
//! `cargo run --example units`

use corepoint::arith::point;
use corepoint::groups::PermGroup;
use corepoint::matrix::IntMatrix;
use corepoint::units::{bass_units, commutant_basis, verify_unit, Normalizer};

fn main() -> corepoint::Result<()> {
    let g = PermGroup::cyclic(5);
    println!("commutant of C5 has rank {}", commutant_basis(&g).rank());

    let m = IntMatrix::from_i64_rows(&[
        vec![-1, 1, 0, 0, 1],
        vec![1, -1, 1, 0, 0],
        vec![0, 1, -1, 1, 0],
        vec![0, 0, 1, -1, 1],
        vec![1, 0, 0, 1, -1],
    ])?;
    let u = verify_unit(&m, &g)?;
    println!("U verified, inverse coefficients {:?}", u.inv().coefficients());
    println!("eigenvalue moduli squared {:?}", u.spectrum());
    println!("U (1,1,1,0,-2) = {:?}", u.apply(&point(&[1, 1, 1, 0, -2])));

    for n in [5usize, 7, 8, 11, 12] {
        let units = bass_units(n);
        println!("C{n}: {} Bass unit(s)", units.len());
        for b in units.iter().take(2) {
            println!("  {:?}", b.coefficients());
        }
    }

    let norm = Normalizer::cyclic(7);
    println!("normalizer of C7: {} generators", norm.generators().len());
    Ok(())
}
