//! Pulling a point with huge entries back to a short representative with
//! units of the normalizer.
//!
//! `cargo run --example balancing`

use corepoint::arith::point;
use corepoint::balance::{balance_point, reduce_min_norm, LogLattice};
use corepoint::units::Normalizer;

fn main() -> corepoint::Result<()> {
    let norm = Normalizer::cyclic(5);
    let lat = LogLattice::from_normalizer(&norm)?;
    println!("log lattice of C5: rank {}, covering constant {:.9}", lat.rank(), lat.d_impl());

    let u = &norm.units()[0];
    let z = u.pow(10).apply(&point(&[1, 1, 1, 0, -2]));
    let b = balance_point(&z, &lat)?;
    println!("z = {:?}", z);
    println!("balanced with exponents {:?}: {:?}", b.exponents, b.point);
    println!("spread {:.6} <= {:.6}", b.ratio, b.d_impl);

    for p in [[13, 0, 8, 8, 0], [21, 0, 13, 13, 0]] {
        let r = reduce_min_norm(&point(&p), &norm, 2)?;
        println!("{:?} reduces to {:?}", p, r.point);
    }
    Ok(())
}
