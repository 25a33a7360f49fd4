//! Operation-count benchmarks, written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use crate::endo::{random_join_endomorphism, Endofunction};
use crate::error::{Error, Result};
use crate::glb::Algorithm;
use crate::latgen::{random_distributive_lattice, random_lattice};
use crate::lattice::{Lattice, LatticeSpec};

pub const CSV_VERSION_LINE: &str = "# joinendo-bench v1";
pub const CSV_HEADER: &str =
    "family,lattice,n,m,algorithm,run,seed,joins,meets,subtractions,sigma_reductions,wall_ns";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `n` must be a power of two.
    Powerset,
    Chain,
    /// `n = k + 2` for `M_k`.
    Mn,
    /// Random lattice of size `n`, drawn per run.
    Random,
    /// Random distributive lattice of size `n`, drawn per run.
    Distributive,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Powerset => "powerset",
            Family::Chain => "chain",
            Family::Mn => "mn",
            Family::Random => "random",
            Family::Distributive => "distributive",
        }
    }

    /// The lattice of size `n` in this family; random families use `seed`.
    pub fn lattice(self, n: usize, seed: u64) -> Result<(String, Lattice)> {
        let spec = match self {
            Family::Powerset => {
                if !n.is_power_of_two() {
                    return Err(Error::OutOfRange {
                        value: n,
                        expected: "a power of two".into(),
                    });
                }
                LatticeSpec::Powerset(n.trailing_zeros() as usize)
            }
            Family::Chain => LatticeSpec::Chain(n),
            Family::Mn => LatticeSpec::Mn(n.checked_sub(2).ok_or(Error::OutOfRange {
                value: n,
                expected: "n ≥ 2".into(),
            })?),
            Family::Random => return Ok((format!("random_{n}_{seed}"), random_lattice(n, seed)?)),
            Family::Distributive => {
                return Ok((format!("distributive_{n}_{seed}"), random_distributive_lattice(n, seed)?))
            }
        };
        Ok((spec.label(), spec.build()?))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Family::Powerset, Family::Chain, Family::Mn, Family::Random, Family::Distributive]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lattice family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: Family,
    pub lattice: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub joins: u64,
    pub meets: u64,
    pub subtractions: u64,
    pub sigma_reductions: u64,
    pub wall_ns: u128,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.lattice,
            self.n,
            self.m,
            self.algorithm,
            self.run,
            self.seed,
            self.joins,
            self.meets,
            self.subtractions,
            self.sigma_reductions,
            self.wall_ns
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub set_sizes: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub seed: u64,
}

/// The inputs of one case: run `run` uses seed `base + run` for the lattice
/// (random families) and `seed + 1 + k` for the `k`-th endomorphism.
pub fn case_inputs(family: Family, n: usize, m: usize, seed: u64) -> Result<(String, Lattice, Vec<Endofunction>)> {
    let (label, lattice) = family.lattice(n, seed)?;
    let set = (0..m as u64)
        .map(|k| random_join_endomorphism(&lattice, seed.wrapping_add(1 + k)))
        .collect::<Result<Vec<_>>>()?;
    Ok((label, lattice, set))
}

pub fn run_case(family: Family, n: usize, m: usize, algorithm: Algorithm, run: usize, seed: u64) -> Result<BenchRecord> {
    let (label, lattice, set) = case_inputs(family, n, m, seed)?;
    measure(family, label, &lattice, &set, algorithm, run, seed)
}

fn measure(
    family: Family,
    lattice_label: String,
    lattice: &Lattice,
    set: &[Endofunction],
    algorithm: Algorithm,
    run: usize,
    seed: u64,
) -> Result<BenchRecord> {
    let start = Instant::now();
    let r = algorithm.run(lattice, set)?;
    let wall_ns = start.elapsed().as_nanos();
    Ok(BenchRecord {
        family,
        lattice: lattice_label,
        n: lattice.size(),
        m: set.len(),
        algorithm,
        run,
        seed,
        joins: r.op_counts.joins,
        meets: r.op_counts.meets,
        subtractions: r.op_counts.subtractions,
        sigma_reductions: r.sigma_reductions,
        wall_ns,
    })
}

/// Runs every case of `config` in a fixed order. Algorithms whose
/// precondition fails on a lattice are skipped for that lattice.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in &config.sizes {
        for &m in &config.set_sizes {
            for run in 0..config.runs {
                let seed = config.seed.wrapping_add(run as u64);
                let (label, lattice, set) = case_inputs(config.family, n, m, seed)?;
                for &algorithm in &config.algorithms {
                    if algorithm.applies_to(&lattice) {
                        records.push(measure(config.family, label.clone(), &lattice, &set, algorithm, run, seed)?);
                    }
                }
            }
        }
    }
    if records.is_empty() {
        return Err(Error::Structure(
            "no benchmark case applies: every algorithm's precondition fails on the chosen lattices".into(),
        ));
    }
    Ok(records)
}

pub fn write_csv(out: &mut dyn Write, records: &[BenchRecord]) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}
