// Every glb algorithm on the same inputs, with operation counts.

use joinendo::endo::{random_join_endomorphism, Endofunction};
use joinendo::glb::Algorithm;
use joinendo::lattice::LatticeSpec;

pub fn run_example() -> joinendo::Result<()> {
    let m3 = LatticeSpec::Mn(3).build()?;
    let set = [
        Endofunction::from_indices(&m3, &[0, 1, 3, 2, 4])?,
        Endofunction::from_indices(&m3, &[0, 4, 2, 3, 4])?,
    ];
    println!("M_3, two maps whose pointwise meet is not join-preserving:");
    report(&m3, &set);

    let l = "chain:3*chain:3".parse::<LatticeSpec>()?.build()?;
    let set: Vec<_> = (0..4).map(|k| random_join_endomorphism(&l, k)).collect::<Result<_, _>>()?;
    println!("3×3 grid, four random maps:");
    report(&l, &set);
    Ok(())
}

fn report(l: &joinendo::Lattice, set: &[Endofunction]) {
    for alg in Algorithm::ALL {
        if !alg.applies_to(l) {
            println!("  {alg:>9}: not applicable");
            continue;
        }
        match alg.run(l, set) {
            Ok(r) => println!(
                "  {alg:>9}: {}   joins {} meets {} subtractions {} σ-reductions {}",
                r.result, r.op_counts.joins, r.op_counts.meets, r.op_counts.subtractions, r.sigma_reductions
            ),
            Err(e) => println!("  {alg:>9}: {e}"),
        }
    }
}

fn main() -> joinendo::Result<()> {
    run_example()
}
