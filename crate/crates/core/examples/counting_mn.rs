// |E(M_n)| from the closed form, by enumeration, and by the four families.

use joinendo::counting::{
    construct_families, count_linear, count_mn, count_non_reducing_mn, count_powerset, rook_coefficient,
    CountReport,
};
use joinendo::endo::DEFAULT_BUDGET;

pub fn run_example() -> joinendo::Result<()> {
    println!("{}", CountReport::CSV_HEADER);
    for n in 0..=6 {
        let r = count_mn(n)?;
        assert!(r.consistent());
        println!("{}", r.csv_row());
    }
    println!("|E(M_30)| = {}", count_mn(30)?.formula);

    let row: Vec<String> = (0..=4).map(|k| rook_coefficient(4, k).map(|r| r.to_string())).collect::<Result<_, _>>()?;
    println!("rook numbers on a 4×4 board: {}", row.join(" "));
    println!("non-reducing maps of M_3: {}", count_non_reducing_mn(3));

    let fam = construct_families(2, DEFAULT_BUDGET)?;
    for (name, members) in [("F1", &fam.f1), ("F2", &fam.f2), ("F3", &fam.f3), ("F4", &fam.f4)] {
        let shown: Vec<String> = members.iter().map(|f| format!("[{f}]")).collect();
        println!("M_2 {name}: {}", shown.join(" "));
    }

    println!("powerset 2^3: {}, chain of 6: {}", count_powerset(3), count_linear(5));
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
