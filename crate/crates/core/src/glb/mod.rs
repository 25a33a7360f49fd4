//! Greatest join-endomorphism below a set `S` of join-endomorphisms.
//!
//! Every algorithm folds `S` left to right when it works pairwise and
//! returns its input unchanged when `|S| = 1`. Lattice operations go
//! through a [`CountedLattice`](crate::lattice::CountedLattice), so each
//! [`MeetResult`] carries the number of joins, meets and subtractions
//! performed.

mod brute;
mod distributive;
mod gmeet;

pub use brute::brute_force_meet;
pub use distributive::{a1_naive, dmeet, dmeet_plus};
pub use gmeet::{
    gmeet, gmeet_observed, gmeet_plus, gmeet_plus_modular, gmeet_plus_observed, verify_01_relations_preserving,
    GMeetState, PairClass, PairUniverse, SigmaUpdate,
};

use std::fmt;
use std::str::FromStr;

use crate::endo::Endofunction;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, OpCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BruteForce,
    A1,
    DMeet,
    DMeetPlus,
    GMeet,
    GMeetPlus,
    GMeetPlusModular,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::BruteForce,
        Algorithm::A1,
        Algorithm::DMeet,
        Algorithm::DMeetPlus,
        Algorithm::GMeet,
        Algorithm::GMeetPlus,
        Algorithm::GMeetPlusModular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::A1 => "a1",
            Algorithm::DMeet => "dmeet",
            Algorithm::DMeetPlus => "dmeet+",
            Algorithm::GMeet => "gmeet",
            Algorithm::GMeetPlus => "gmeet+",
            Algorithm::GMeetPlusModular => "gmeet+mod",
        }
    }

    /// Whether the algorithm's precondition holds on `lattice`.
    pub fn applies_to(self, lattice: &Lattice) -> bool {
        match self {
            Algorithm::A1 | Algorithm::DMeet | Algorithm::DMeetPlus => lattice.is_distributive(),
            Algorithm::GMeetPlusModular => lattice.is_modular(),
            _ => true,
        }
    }

    pub fn run(self, lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
        match self {
            Algorithm::BruteForce => brute_force_meet(lattice, set, crate::endo::DEFAULT_BUDGET),
            Algorithm::A1 => a1_naive(lattice, set),
            Algorithm::DMeet => dmeet(lattice, set),
            Algorithm::DMeetPlus => dmeet_plus(lattice, set),
            Algorithm::GMeet => gmeet(lattice, set),
            Algorithm::GMeetPlus => gmeet_plus(lattice, set, PairUniverse::AllPairs),
            Algorithm::GMeetPlusModular => gmeet_plus_modular(lattice, set),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetResult {
    pub result: Endofunction,
    pub op_counts: OpCounts,
    pub algorithm: Algorithm,
    /// Number of strict decreases of a single σ value (GMeet family only).
    pub sigma_reductions: u64,
}

impl MeetResult {
    fn unchanged(f: &Endofunction, algorithm: Algorithm) -> Self {
        MeetResult {
            result: f.clone(),
            op_counts: OpCounts::default(),
            algorithm,
            sigma_reductions: 0,
        }
    }
}

fn validate(lattice: &Lattice, set: &[Endofunction]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for f in set {
        if f.len() != lattice.size() {
            return Err(Error::SizeMismatch {
                expected: lattice.size(),
                got: f.len(),
            });
        }
    }
    Ok(())
}

/// Greatest join-endomorphism pointwise below an arbitrary self-map `f`.
///
/// Runs the GMeet corrections starting from `σ = f`; the corrections only
/// rely on `σ` staying above the target, which holds for any start map.
pub fn greatest_join_endomorphism_below(lattice: &Lattice, f: &Endofunction) -> Endofunction {
    gmeet::correct_from(lattice, f.clone())
}
