//! Lattices as explicit order relations, grown by adding nodes and edges.
//!
//! A node step inserts a fresh element `x` with `a ⊑ x ⊑ b`; an edge step
//! adds pairs to the relation and closes it transitively. Both are kept only
//! when the result is again a lattice relation.

mod canon;
mod conjecture;
mod generate;
mod random;

pub use canon::{canonical_form, CanonicalForm};
pub use conjecture::{
    conjecture_search, conjecture_search_in, edge_augmentations, ConjectureReport, Counterexample, SearchScope,
};
pub use generate::{
    generate_all_lattices, labeled_lattice_oracle, GeneratedLattices, MAX_GENERATION_SIZE,
};
pub use random::{random_distributive_lattice, random_lattice};

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{close_up_sets, Lattice};

/// A reflexive relation on `0..n`, stored as rows: `b ∈ row(a)` iff `a ⊑ b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderRelation {
    up: Vec<BitSet>,
}

impl OrderRelation {
    /// The discrete order on `n` elements.
    pub fn discrete(n: usize) -> Self {
        let up = (0..n)
            .map(|a| {
                let mut row = BitSet::new(n);
                row.insert(a);
                row
            })
            .collect();
        OrderRelation { up }
    }

    pub fn chain(n: usize) -> Self {
        let mut rel = Self::discrete(n);
        for a in 0..n {
            for b in a..n {
                rel.up[a].insert(b);
            }
        }
        rel
    }

    /// Reflexive relation containing `pairs`; not closed.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Self::discrete(n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidElement(a.max(b), n));
            }
            rel.up[a].insert(b);
        }
        Ok(rel)
    }

    pub fn from_lattice(lattice: &Lattice) -> Self {
        OrderRelation {
            up: lattice.elements().map(|a| lattice.up_bits(a).clone()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub(crate) fn up_row(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// Relation pairs `(a, b)` with `a ⊑ b`, including the diagonal.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn is_total(&self) -> bool {
        (0..self.size()).all(|a| (a + 1..self.size()).all(|b| self.comparable(a, b)))
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_up_sets(self.up.clone())
    }

    /// The relation with elements renamed by `perm` (`a` becomes `perm[a]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size();
        let mut up = vec![BitSet::new(n); n];
        for (a, row) in self.up.iter().enumerate() {
            for b in row.iter() {
                up[perm[a]].insert(perm[b]);
            }
        }
        OrderRelation { up }
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_subrelation_of(&self, other: &OrderRelation) -> bool {
        self.size() == other.size() && self.up.iter().zip(&other.up).all(|(a, b)| a.is_subset(b))
    }
}

impl fmt::Debug for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<_> = self.pairs().filter(|(a, b)| a != b).collect();
        write!(f, "OrderRelation({}, {:?})", self.size(), strict)
    }
}

/// Transitive closure; fails if the closure relates two distinct elements
/// both ways.
pub fn transitive_closure(rel: &OrderRelation) -> Result<OrderRelation> {
    let mut up = rel.up.clone();
    close_up_sets(&mut up);
    for (a, row) in up.iter().enumerate() {
        for b in row.iter() {
            if b != a && up[b].contains(a) {
                return Err(Error::AntisymmetryBroken {
                    a: a.into(),
                    b: b.into(),
                });
            }
        }
    }
    Ok(OrderRelation { up })
}

/// Whether `rel` is a partial order in which every pair has a unique least
/// upper bound and greatest lower bound.
pub fn is_lattice_relation(rel: &OrderRelation) -> bool {
    let n = rel.size();
    if n == 0 || !is_partial_order(rel) {
        return false;
    }
    let down: Vec<BitSet> = (0..n)
        .map(|b| {
            let mut row = BitSet::new(n);
            for a in 0..n {
                if rel.leq(a, b) {
                    row.insert(a);
                }
            }
            row
        })
        .collect();
    let has_extremum = |rows: &[BitSet], a: usize, b: usize| {
        let mut common = rows[a].clone();
        common.intersect_with(&rows[b]);
        let size = common.count();
        // the least upper bound is the common bound whose own row is all of them
        let found = common.iter().any(|c| rows[c].count() == size);
        found
    };
    (0..n).all(|a| (a + 1..n).all(|b| has_extremum(&rel.up, a, b) && has_extremum(&down, a, b)))
}

fn is_partial_order(rel: &OrderRelation) -> bool {
    rel.up.iter().enumerate().all(|(a, row)| {
        row.contains(a)
            && row
                .iter()
                .all(|b| (b == a || !rel.up[b].contains(a)) && rel.up[b].is_subset(row))
    })
}

fn closed_lattice(rel: OrderRelation) -> Option<OrderRelation> {
    transitive_closure(&rel).ok().filter(is_lattice_relation)
}

/// Pairs `(a, b)` with `a ⋢ b` whose addition, after closing, leaves a
/// lattice relation. Decided by performing the addition.
pub fn free_pairs(rel: &OrderRelation) -> Vec<(usize, usize)> {
    let n = rel.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rel.leq(a, b) {
                continue;
            }
            let mut candidate = rel.clone();
            candidate.up[a].insert(b);
            if closed_lattice(candidate).is_some() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Pairs satisfying the bowtie criterion: `a`, `b` incomparable and no
/// `(x, y)` with `x ⊏ b`, `b ⋤ y`, `x ⋤ a`, `a ⊏ y` and `x ⊏ y`.
///
/// Kept alongside [`free_pairs`] for comparison; it is not used to decide
/// anything else.
pub fn free_pairs_bowtie(rel: &OrderRelation) -> Vec<(usize, usize)> {
    let n = rel.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rel.comparable(a, b) {
                continue;
            }
            let blocked = (0..n).any(|x| {
                rel.lt(x, b)
                    && !rel.lt(x, a)
                    && (0..n).any(|y| !rel.lt(b, y) && rel.lt(a, y) && rel.lt(x, y))
            });
            if !blocked {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AugmentationStep {
    /// Add every pair in the set, then close.
    Edge(Vec<(usize, usize)>),
    /// Append element `n` with `below ⊑ n ⊑ above`.
    Node { below: usize, above: usize },
    /// A node step followed by an edge step on the enlarged relation.
    Mixed {
        below: usize,
        above: usize,
        edges: Vec<(usize, usize)>,
    },
}

pub fn augment(rel: &OrderRelation, step: &AugmentationStep) -> Result<OrderRelation> {
    let n = rel.size();
    let check = |a: usize, limit: usize| {
        if a >= limit {
            Err(Error::InvalidElement(a, limit))
        } else {
            Ok(())
        }
    };
    let grown = match step {
        AugmentationStep::Edge(edges) => {
            let mut next = rel.clone();
            for &(a, b) in edges {
                check(a.max(b), n)?;
                next.up[a].insert(b);
            }
            next
        }
        AugmentationStep::Node { below, above } => {
            check(*below, n)?;
            check(*above, n)?;
            let mut up: Vec<BitSet> = rel
                .up
                .iter()
                .map(|row| {
                    let mut wide = BitSet::new(n + 1);
                    for b in row.iter() {
                        wide.insert(b);
                    }
                    wide
                })
                .collect();
            let mut fresh = BitSet::new(n + 1);
            fresh.insert(n);
            fresh.insert(*above);
            up.push(fresh);
            up[*below].insert(n);
            OrderRelation { up }
        }
        AugmentationStep::Mixed { below, above, edges } => {
            let node = augment(
                rel,
                &AugmentationStep::Node {
                    below: *below,
                    above: *above,
                },
            )?;
            return augment(&node, &AugmentationStep::Edge(edges.clone()));
        }
    };
    closed_lattice(grown).ok_or(Error::NotALatticeAfterAugmentation)
}
