//! For the full symmetric group the normalizer is finite and the core
//! points of each layer are the translates of 0/1 vectors.
//!
//! `cargo run --release --example symmetric_group`

use corepoint::enumerate::{enumerate_core_classes, EnumerateOptions};
use corepoint::units::Normalizer;

fn main() -> corepoint::Result<()> {
    for d in [3usize, 4] {
        let norm = Normalizer::symmetric(d);
        println!("Sym({d}): {} units in the normalizer", norm.units().len());
        for k in 0..d as i64 {
            let classes = enumerate_core_classes(&norm, k, 12.0, &EnumerateOptions::default())?;
            let reps: Vec<_> = classes.iter().map(|c| &c.canonical).collect();
            println!("  layer {k}: {reps:?}");
        }
    }
    Ok(())
}
