//! Facet description of an orbit polytope whose vertices have large
//! entries.
//!
//! `cargo run --example facets`

use corepoint::arith::point;
use corepoint::geometry::OrbitPolytope;
use corepoint::groups::PermGroup;
use corepoint::units::Normalizer;

fn main() -> corepoint::Result<()> {
    let g = PermGroup::cyclic(5);
    let simplex = OrbitPolytope::new(&g, &point(&[1, 0, 0, 0, 0]))?;
    let desc = simplex.facets()?;
    println!("simplex: {} equation(s), {} facets", desc.equations.len(), desc.facets.len());
    for h in &desc.facets {
        println!("  {:?} . x <= {}", h.normal, h.offset);
    }

    let norm = Normalizer::cyclic(5);
    let u = &norm.units()[0];
    let z = u.pow(10).apply(&point(&[1, 1, 1, 0, -2]));
    println!("\nU^10 (1,1,1,0,-2) = {:?}", z);
    let p = OrbitPolytope::new(&g, &z)?;
    let desc = p.facets()?;
    for h in &desc.equations {
        println!("  {:?} . x = {}", h.normal, h.offset);
    }
    for h in &desc.facets {
        println!("  {:?} . x <= {}", h.normal, h.offset);
    }
    println!("still a core point: {}", p.is_core()?);
    Ok(())
}
