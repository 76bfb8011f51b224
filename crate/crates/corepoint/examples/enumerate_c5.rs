//! Core points of C5 in layers 1 and 2 up to normalizer equivalence.
//!
//! `cargo run --release --example enumerate_c5`

use corepoint::balance::LogLattice;
use corepoint::enumerate::{default_c_const, enumerate_core_classes, norm_bound, EnumerateOptions};
use corepoint::groups::PermGroup;
use corepoint::units::Normalizer;
use num_bigint::BigInt;

fn main() -> corepoint::Result<()> {
    let norm = Normalizer::cyclic(5);
    let lat = LogLattice::from_normalizer(&norm)?;
    let c = default_c_const(5).expect("prime degree");
    for k in 1..=2i64 {
        let m = norm_bound(&lat, &c, &BigInt::from(k))?;
        let classes = enumerate_core_classes(&norm, k, m, &EnumerateOptions::default())?;
        println!("layer {k}, squared norm <= {m:.3}: {} classes", classes.len());
        for cl in &classes {
            println!("  {:?}  |z|^2 = {}  points seen {}", cl.canonical, cl.norm_sq, cl.class_size_found);
        }
        let opts = EnumerateOptions {
            subgroup_filter: Some(PermGroup::dihedral(5)),
            ..EnumerateOptions::default()
        };
        let d5 = enumerate_core_classes(&norm, k, m, &opts)?;
        println!("  invariant under D5: {:?}", d5.iter().map(|c| &c.canonical).collect::<Vec<_>>());
    }
    Ok(())
}
