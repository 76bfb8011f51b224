//! Integer points of orbit polytopes and the core-point test.
//!
//! `cargo run --example core_points`

use corepoint::arith::point;
use corepoint::geometry::{is_core_point, OrbitPolytope};
use corepoint::groups::PermGroup;

fn main() -> corepoint::Result<()> {
    let c5 = PermGroup::cyclic(5);
    for z in [[1, 0, 0, 0, 0], [1, 1, 1, 0, -2], [2, 0, 0, 0, -2], [3, -1, 0, 2, -3]] {
        let z = point(&z);
        let p = OrbitPolytope::new(&c5, &z)?;
        let pts = p.integral_points()?;
        println!(
            "C5 {:?}: {} vertices, {} integer points, core: {}",
            z,
            p.vertices().len(),
            pts.len(),
            p.is_core()?
        );
    }

    // the hexagon of S3 has its centre as an extra integer point
    let s3 = PermGroup::symmetric(3);
    let hex = OrbitPolytope::new(&s3, &point(&[2, 1, 0]))?;
    println!("S3 (2,1,0): integer points {:?}", hex.integral_points()?);

    // every 0/1 vector is core for the symmetric group
    let s4 = PermGroup::symmetric(4);
    for k in 0..=4 {
        let z: Vec<i64> = (0..4).map(|i| i64::from(i < k)).collect();
        println!("S4 {:?} core: {}", z, is_core_point(&s4, &point(&z))?);
    }
    Ok(())
}
