use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{augment, free_pairs, AugmentationStep, OrderRelation};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Random walk over node and edge steps, starting from the 2-chain and
/// stopping once the lattice has `n` elements.
///
/// At every stage the step is chosen uniformly among all node steps
/// `a ⊏ b` and all free pairs. The result is not uniform over lattices:
/// shapes reachable by many walks are favoured.
pub fn random_lattice(n: usize, seed: u64) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::OutOfRange {
            value: 0,
            expected: "n ≥ 1".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel = OrderRelation::chain(n.min(2));
    while rel.size() < n {
        let size = rel.size();
        let mut steps: Vec<AugmentationStep> = Vec::new();
        for below in 0..size {
            for above in 0..size {
                if rel.lt(below, above) {
                    steps.push(AugmentationStep::Node { below, above });
                }
            }
        }
        steps.extend(free_pairs(&rel).into_iter().map(|p| AugmentationStep::Edge(vec![p])));
        let step = &steps[rng.gen_range(0..steps.len())];
        rel = augment(&rel, step)?;
    }
    rel.to_lattice()
}

const DISTRIBUTIVE_RETRIES: usize = 2_000;

/// Down-set lattice of a random poset, retried until it has exactly `n`
/// elements.
///
/// Each attempt picks a number of generators `k` with `2^k ≥ n` and
/// `k < n`, a random density `p`, and relates `i < j` with probability `p`.
pub fn random_distributive_lattice(n: usize, seed: u64) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::OutOfRange {
            value: 0,
            expected: "n ≥ 1".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_min = (usize::BITS - (n - 1).leading_zeros()) as usize;
    let k_max = (n - 1).max(k_min);
    let mut closest = 0usize;
    for _ in 0..DISTRIBUTIVE_RETRIES {
        let k = rng.gen_range(k_min..=k_max);
        let p: f64 = rng.gen();
        let mut below = vec![BitSet::new(k); k];
        for j in 0..k {
            for i in 0..j {
                if rng.gen_bool(p) {
                    let row = below[i].clone();
                    below[j].insert(i);
                    below[j].union_with(&row);
                }
            }
        }
        let downsets = down_sets(&below, n + 1);
        if downsets.len() == n {
            let lattice = inclusion_lattice(downsets)?;
            debug_assert!(lattice.is_distributive());
            return Ok(lattice);
        }
        if downsets.len().abs_diff(n) < closest.abs_diff(n) {
            closest = downsets.len();
        }
    }
    Err(Error::SizeUnreachable { wanted: n, closest })
}

/// Down-closed subsets of a poset given by strict down-sets, stopping after
/// `cap` have been found.
fn down_sets(below: &[BitSet], cap: usize) -> Vec<BitSet> {
    fn walk(below: &[BitSet], i: usize, current: &mut BitSet, out: &mut Vec<BitSet>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if i == below.len() {
            out.push(current.clone());
            return;
        }
        walk(below, i + 1, current, out, cap);
        // predecessors of i all have smaller indices
        if below[i].is_subset(current) {
            current.insert(i);
            walk(below, i + 1, current, out, cap);
            current.remove(i);
        }
    }
    let mut out = Vec::new();
    walk(below, 0, &mut BitSet::new(below.len()), &mut out, cap);
    out
}

fn inclusion_lattice(mut sets: Vec<BitSet>) -> Result<Lattice> {
    sets.sort_by_key(|s| s.count());
    let n = sets.len();
    let up = sets
        .iter()
        .map(|a| {
            let mut row = BitSet::new(n);
            for (j, b) in sets.iter().enumerate() {
                if a.is_subset(b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Lattice::from_up_sets(up)
}
