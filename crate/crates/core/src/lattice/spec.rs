use std::path::PathBuf;
use std::str::FromStr;

use super::{read_cover_relation, KnownFlags, Lattice};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Recipe for a lattice.
///
/// Textual form (used by the command line): `chain:K`, `powerset:M`,
/// `mn:K`, `n5`, `file:PATH` (cover-relation text file) and `A*B` for
/// products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    /// Total order `0 ⊏ 1 ⊏ … ⊏ k-1`.
    Chain(usize),
    /// Subsets of an `m`-element set; element id is the subset's bitmask.
    Powerset(usize),
    /// `k` pairwise incomparable middles between `⊥ = 0` and `⊤ = k+1`.
    Mn(usize),
    /// The five-element non-modular lattice: `0 ⋖ 1 ⋖ 2 ⋖ 4`, `0 ⋖ 3 ⋖ 4`.
    Pentagon,
    CoverRelation { n: usize, edges: Vec<(usize, usize)> },
    CoverFile(PathBuf),
    /// Component-wise order; element `(i, j)` gets id `i * |right| + j`.
    Product(Box<LatticeSpec>, Box<LatticeSpec>),
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            LatticeSpec::Chain(k) => {
                if *k == 0 {
                    return Err(Error::OutOfRange {
                        value: 0,
                        expected: "chain length ≥ 1".into(),
                    });
                }
                let up = (0..*k)
                    .map(|a| {
                        let mut row = BitSet::new(*k);
                        (a..*k).for_each(|b| row.insert(b));
                        row
                    })
                    .collect();
                Lattice::from_up_sets_with(up, known(true, true))
            }
            LatticeSpec::Powerset(m) => {
                if *m > 16 {
                    return Err(Error::OutOfRange {
                        value: *m,
                        expected: "powerset exponent ≤ 16".into(),
                    });
                }
                let n = 1usize << m;
                let up = (0..n)
                    .map(|a| {
                        let mut row = BitSet::new(n);
                        (0..n).filter(|b| a & b == a).for_each(|b| row.insert(b));
                        row
                    })
                    .collect();
                Lattice::from_up_sets_with(up, known(true, true))
            }
            LatticeSpec::Mn(k) => {
                let top = k + 1;
                let mut edges: Vec<(usize, usize)> = (1..=*k).flat_map(|i| [(0, i), (i, top)]).collect();
                if *k == 0 {
                    edges.push((0, 1));
                }
                let up = super::reflexive_transitive_closure(k + 2, &edges)?;
                Lattice::from_up_sets_with(up, known(*k <= 2, true))
            }
            LatticeSpec::Pentagon => {
                let up = super::reflexive_transitive_closure(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])?;
                Lattice::from_up_sets_with(up, known(false, false))
            }
            LatticeSpec::CoverRelation { n, edges } => Lattice::from_cover_relation(*n, edges),
            LatticeSpec::CoverFile(path) => {
                let text = std::fs::read_to_string(path)?;
                read_cover_relation(&text)
            }
            LatticeSpec::Product(left, right) => {
                let l = left.build()?;
                let r = right.build()?;
                let (nl, nr) = (l.size(), r.size());
                let n = nl * nr;
                let up = (0..n)
                    .map(|x| {
                        let mut row = BitSet::new(n);
                        for y in 0..n {
                            if l.leq((x / nr).into(), (y / nr).into()) && r.leq((x % nr).into(), (y % nr).into()) {
                                row.insert(y);
                            }
                        }
                        row
                    })
                    .collect();
                let flags = KnownFlags {
                    distributive: Some(l.is_distributive() && r.is_distributive()),
                    modular: Some(l.is_modular() && r.is_modular()),
                };
                Lattice::from_up_sets_with(up, flags)
            }
        }
    }

    /// Short label used in CSV output, e.g. `M_3` or `2^4`.
    pub fn label(&self) -> String {
        match self {
            LatticeSpec::Chain(k) => format!("chain_{k}"),
            LatticeSpec::Powerset(m) => format!("2^{m}"),
            LatticeSpec::Mn(k) => format!("M_{k}"),
            LatticeSpec::Pentagon => "N_5".into(),
            LatticeSpec::CoverRelation { n, .. } => format!("covers_{n}"),
            LatticeSpec::CoverFile(p) => p.display().to_string(),
            LatticeSpec::Product(a, b) => format!("{}x{}", a.label(), b.label()),
        }
    }
}

fn known(distributive: bool, modular: bool) -> KnownFlags {
    KnownFlags {
        distributive: Some(distributive),
        modular: Some(modular),
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('*') {
            return Ok(LatticeSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = || {
            arg.parse::<usize>()
                .map_err(|_| Error::Parse(format!("expected a number after `{kind}:` in `{s}`")))
        };
        match kind {
            "chain" => Ok(LatticeSpec::Chain(num()?)),
            "powerset" | "2^" => Ok(LatticeSpec::Powerset(num()?)),
            "mn" | "m" => Ok(LatticeSpec::Mn(num()?)),
            "n5" | "pentagon" => Ok(LatticeSpec::Pentagon),
            "file" => Ok(LatticeSpec::CoverFile(PathBuf::from(arg))),
            _ => Err(Error::Parse(format!("unknown lattice `{s}`"))),
        }
    }
}
