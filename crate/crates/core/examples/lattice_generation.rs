// All lattices up to isomorphism, free pairs, and random lattices.

use joinendo::latgen::{
    free_pairs, free_pairs_bowtie, generate_all_lattices, labeled_lattice_oracle, random_distributive_lattice,
    random_lattice, OrderRelation,
};

pub fn run_example() -> joinendo::Result<()> {
    let all = generate_all_lattices(7)?;
    for (size, count) in all.counts() {
        let distributive = all.lattices(size).filter(|l| l.is_distributive()).count();
        let modular = all.lattices(size).filter(|l| l.is_modular()).count();
        println!("size {size}: {count} lattices, {modular} modular, {distributive} distributive");
    }
    println!("oracle at size 5: {} classes", labeled_lattice_oracle(5).len());

    let mut disagreements = 0;
    for size in 1..=6 {
        for rel in all.of_size(size) {
            let (mut a, mut b) = (free_pairs(rel), free_pairs_bowtie(rel));
            a.sort();
            b.sort();
            if a != b {
                disagreements += 1;
            }
        }
    }
    println!("bowtie criterion vs. definition, sizes ≤ 6: {disagreements} disagreements");

    let l = random_lattice(9, 3)?;
    println!("random lattice of 9: {} cover edges, modular {}", l.cover_edges().len(), l.is_modular());
    let d = random_distributive_lattice(12, 3)?;
    println!("random distributive lattice of 12: {} join-irreducibles", d.join_irreducibles().len());
    println!("{:?}", OrderRelation::from_lattice(&random_lattice(4, 1)?));
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
