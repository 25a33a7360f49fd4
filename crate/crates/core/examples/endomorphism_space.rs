// Enumerating and sampling join-endomorphisms.

use joinendo::endo::{
    count_join_endomorphisms, enumerate_join_endomorphisms, is_join_endomorphism, pointwise_meet_many,
    random_join_endomorphism, Endofunction, DEFAULT_BUDGET,
};
use joinendo::lattice::LatticeSpec;

pub fn run_example() -> joinendo::Result<()> {
    let m2 = LatticeSpec::Mn(2).build()?;
    println!("E(M_2):");
    for f in enumerate_join_endomorphisms(&m2, DEFAULT_BUDGET)? {
        println!("  {f}");
    }

    // the pointwise meet of two join-endomorphisms need not be one
    let f = Endofunction::from_indices(&m2, &[0, 2, 1, 3])?;
    let g = Endofunction::from_indices(&m2, &[0, 3, 2, 3])?;
    let pointwise = pointwise_meet_many(&m2, &[f, g])?;
    println!("f ⊓ g pointwise = {pointwise}, join-endomorphism: {}", is_join_endomorphism(&m2, &pointwise));

    for spec in ["chain:5", "powerset:3", "n5", "mn:4"] {
        let l = spec.parse::<LatticeSpec>()?.build()?;
        println!("|E({spec})| = {}", count_join_endomorphisms(&l, DEFAULT_BUDGET)?);
    }

    let n5 = LatticeSpec::Pentagon.build()?;
    for seed in 0..3 {
        println!("random on N_5: {}", random_join_endomorphism(&n5, seed)?);
    }
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
