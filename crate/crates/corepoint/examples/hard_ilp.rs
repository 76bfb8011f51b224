//! An integer-infeasible symmetric program with huge coefficients, and its
//! reformulation by a unimodular substitution.
//!
//! `cargo run --release --example hard_ilp`

use corepoint::arith::point;
use corepoint::groups::PermGroup;
use corepoint::ilp::{
    brute_force_feasible, derive_box, generate_hard_instance, improve_formulation,
    improve_formulation_nearest_plane, real_feasible, write_instance,
};
use corepoint::units::Normalizer;
use num_bigint::BigInt;
use num_traits::One;

fn main() -> corepoint::Result<()> {
    let g = PermGroup::cyclic(5);
    let norm = Normalizer::cyclic(5);
    let u = &norm.units()[0];
    let z = u.pow(10).apply(&point(&[1, 1, 1, 0, -2]));
    let p = generate_hard_instance(&g, &z, &BigInt::one())?;
    print!("{}", write_instance(&p));
    println!("relaxation feasible: {}", real_feasible(&p));
    println!("box {:?}", derive_box(&p)?);

    let rep = improve_formulation(&p, &g, 50)?;
    println!(
        "\n{} greedy steps, max |entry| {} -> {}",
        rep.steps.len(),
        rep.before.max_abs,
        rep.after.max_abs
    );
    print!("{}", write_instance(&rep.instance));
    let np = improve_formulation_nearest_plane(&p, &g, 50)?;
    println!(
        "nearest-plane start, then {} greedy steps: max |entry| {}",
        np.steps.len(),
        np.after.max_abs
    );
    let bx = derive_box(&rep.instance)?;
    println!("integer solution: {:?}", brute_force_feasible(&rep.instance, &bx)?);
    Ok(())
}
