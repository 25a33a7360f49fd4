// Does adding order relations always add join-endomorphisms?

use joinendo::latgen::{conjecture_search, conjecture_search_in, ConjectureReport, SearchScope};

fn show(r: &ConjectureReport) {
    println!(
        "{:?}: {} lattices, {} augmentation pairs, {} without gain",
        r.scope, r.lattices, r.pairs_examined, r.counterexamples
    );
    if let Some(c) = &r.first {
        println!("  first: {:?} (|E| = {})", c.before, c.endomorphisms_before);
        println!("     -> {:?} (|E| = {})", c.after, c.endomorphisms_after);
        println!("  re-counted by scanning all maps: {}", c.reverified);
    }
}

pub fn run_example() -> joinendo::Result<()> {
    show(&conjecture_search(6, 7)?);
    show(&conjecture_search_in(5, 7, SearchScope::AllLattices)?);
    Ok(())
}

fn main() -> joinendo::Result<()> {
    run_example()
}
