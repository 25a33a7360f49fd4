// Building lattices and querying their structure.

use joinendo::lattice::{write_cover_relation, ElementId, Lattice, LatticeSpec};

pub fn run_example() -> joinendo::Result<()> {
    let n5: Lattice = "n5".parse::<LatticeSpec>()?.build()?;
    println!("pentagon covers:\n{}", write_cover_relation(&n5));
    println!("distributive: {}, modular: {}", n5.is_distributive(), n5.is_modular());

    let grid = "chain:2*chain:3".parse::<LatticeSpec>()?.build()?;
    let (a, b) = (ElementId(1), ElementId(3));
    println!("in 2×3: {a} ⊔ {b} = {}, {a} ⊓ {b} = {}", grid.join(a, b), grid.meet(a, b));
    println!("join-irreducibles: {:?}", grid.join_irreducibles());
    println!("height {}", grid.height());

    // c ⊖ a: the least b with a ⊔ b ⊒ c
    let cube = LatticeSpec::Powerset(3).build()?;
    let diff = cube.subtraction(ElementId(0b111), ElementId(0b011))?;
    println!("{{0,1,2}} ⊖ {{0,1}} = {:03b}", diff.0);

    let m3 = LatticeSpec::Mn(3).build()?;
    println!("M_3 subtraction: {:?}", m3.subtraction(m3.top(), ElementId(1)).map_err(|e| e.to_string()));

    let from_covers = Lattice::from_cover_relation(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])?;
    assert_eq!(from_covers, LatticeSpec::Powerset(2).build()?);
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
