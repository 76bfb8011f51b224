//! Isotypic decomposition of the cyclic action, the QI test and finiteness
//! of the normalizer.
//!
//! `cargo run --example decomposition`

use corepoint::arith::point;
use corepoint::groups::PermGroup;
use corepoint::repdecomp::{cyclic_components, is_qi_group, normalizer_finite, projection_norms};

fn main() -> corepoint::Result<()> {
    for n in [5usize, 6, 7, 8] {
        println!(
            "C{n}: QI {}, finite normalizer {}",
            is_qi_group(&PermGroup::cyclic(n))?,
            normalizer_finite(n)
        );
        for c in cyclic_components(n) {
            println!(
                "  frequencies {:?}  order {}  real dim {}  rational {}",
                c.frequencies, c.order, c.real_dimension, c.rational
            );
        }
    }

    let z = point(&[3, -1, 4, 1, -5]);
    let comps = cyclic_components(5);
    let prof = projection_norms(&z, &comps);
    println!("\nsquared projections of {:?}:", z);
    for (c, v) in comps.iter().zip(&prof.component_norms) {
        println!("  {:?}: {v:.12}", c.frequencies);
    }
    let total: f64 = prof.component_norms.iter().sum();
    println!("  sum {total:.12} (|z|^2 = 52), error bound {:e}", prof.error_bound);
    Ok(())
}
