// DMeet+ operation counts on powerset lattices of 16 to 1024 elements.

use joinendo::bench::{run_bench, write_csv, BenchConfig, Family};
use joinendo::glb::Algorithm;

pub fn run_example() -> joinendo::Result<()> {
    let records = run_bench(&BenchConfig {
        family: Family::Powerset,
        sizes: (4..=10).map(|m| 1 << m).collect(),
        set_sizes: vec![2],
        algorithms: vec![Algorithm::DMeetPlus],
        runs: 1,
        seed: 1,
    })?;
    println!("{:>6} {:>6} {:>6}", "n", "joins", "meets");
    for r in &records {
        println!("{:>6} {:>6} {:>6}", r.n, r.joins, r.meets);
    }

    // DMeet and GMeet+ on the small end of the range
    let more = run_bench(&BenchConfig {
        family: Family::Powerset,
        sizes: vec![16, 32],
        set_sizes: vec![2],
        algorithms: vec![Algorithm::DMeet, Algorithm::GMeetPlus],
        runs: 1,
        seed: 1,
    })?;
    write_csv(&mut std::io::stdout(), &more)?;
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
