//! Deciding equivalence of two points under translations, the group and
//! the normalizer, with witnesses.
//!
//! `cargo run --example equivalence`

use corepoint::arith::point;
use corepoint::enumerate::canonical_form;
use corepoint::groups::PermGroup;
use corepoint::units::{normalizer_equivalent, translation_equivalent, Normalizer, Verdict};

fn main() -> corepoint::Result<()> {
    let c4 = PermGroup::cyclic(4);
    let a = point(&[1, 0, 0, 0]);
    let b = point(&[2, 1, 1, 1]);
    println!("C4: {:?} ~ {:?} by translation: {}", a, b, translation_equivalent(&c4, &a, &b)?);

    let norm = Normalizer::cyclic(5);
    let x = point(&[3, 0, 2, 2, 0]);
    let y = point(&[1, 0, 1, 1, 0]);
    match normalizer_equivalent(&norm, &x, &y, 10_000)? {
        Verdict::Equivalent(mv) => {
            println!("C5: {:?} -> {:?}", x, mv.apply(&x));
            println!("  matrix {}", mv.linear().to_json());
            println!("  shift {:?}", mv.shift());
        }
        other => println!("C5: {other:?}"),
    }
    let v = normalizer_equivalent(&norm, &point(&[1, 0, 0, 0, 0]), &point(&[1, 1, 0, 0, -1]), 10_000)?;
    println!("(1,0,0,0,0) vs (1,1,0,0,-1): equivalent {}", v.is_equivalent());

    for z in [[13, 0, 8, 8, 0], [2, 1, 0, -1, -1]] {
        let c = canonical_form(&norm, &point(&z))?;
        println!("canonical form of {:?}: {:?}", z, c.point);
    }
    Ok(())
}
