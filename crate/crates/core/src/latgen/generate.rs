//! Exhaustive generation of lattices up to isomorphism.

use std::collections::{BTreeMap, VecDeque};

use super::{augment, canonical_form, free_pairs, is_lattice_relation, AugmentationStep, CanonicalForm, OrderRelation};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub const MAX_GENERATION_SIZE: usize = 8;

/// One canonical representative per isomorphism class, grouped by size.
#[derive(Clone, Debug)]
pub struct GeneratedLattices {
    levels: Vec<Vec<OrderRelation>>,
}

impl GeneratedLattices {
    /// Representatives of size `n`, in canonical-form order.
    pub fn of_size(&self, n: usize) -> &[OrderRelation] {
        n.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map_or(&[], Vec::as_slice)
    }

    pub fn max_size(&self) -> usize {
        self.levels.len()
    }

    /// `(size, count)` for every generated size.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.levels.iter().enumerate().map(|(i, l)| (i + 1, l.len())).collect()
    }

    pub fn lattices(&self, n: usize) -> impl Iterator<Item = Lattice> + '_ {
        self.of_size(n).iter().map(|r| r.to_lattice().expect("generated relations are lattices"))
    }
}

/// Every lattice with at most `n_max` elements, once per isomorphism class.
///
/// Sizes 1 and 2 are seeded directly. Each larger level takes every node
/// step `a ⊏ b` on every lattice of the previous level, then closes the
/// resulting set under single free-pair edge steps.
pub fn generate_all_lattices(n_max: usize) -> Result<GeneratedLattices> {
    if n_max > MAX_GENERATION_SIZE {
        return Err(Error::BudgetExceeded {
            estimated: n_max as u128,
            budget: MAX_GENERATION_SIZE as u128,
        });
    }
    let mut levels: Vec<Vec<OrderRelation>> = Vec::new();
    for n in 1..=n_max {
        let level = match n {
            1 | 2 => vec![OrderRelation::chain(n)],
            _ => next_level(levels.last().expect("previous level")),
        };
        levels.push(level);
    }
    Ok(GeneratedLattices { levels })
}

fn next_level(previous: &[OrderRelation]) -> Vec<OrderRelation> {
    let mut found: BTreeMap<CanonicalForm, OrderRelation> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut admit = |rel: OrderRelation, queue: &mut VecDeque<OrderRelation>| {
        let (form, perm) = canonical_form(&rel);
        if let std::collections::btree_map::Entry::Vacant(slot) = found.entry(form) {
            let canon = rel.relabel(&perm);
            slot.insert(canon.clone());
            queue.push_back(canon);
        }
    };
    for rel in previous {
        let n = rel.size();
        for below in 0..n {
            for above in 0..n {
                if rel.lt(below, above) {
                    if let Ok(next) = augment(rel, &AugmentationStep::Node { below, above }) {
                        admit(next, &mut queue);
                    }
                }
            }
        }
    }
    while let Some(rel) = queue.pop_front() {
        for pair in free_pairs(&rel) {
            if let Ok(next) = augment(&rel, &AugmentationStep::Edge(vec![pair])) {
                admit(next, &mut queue);
            }
        }
    }
    found.into_values().collect()
}

/// Independent count of lattices of size `n` up to isomorphism: builds
/// every labelled partial order on `0..n` one element at a time, keeps the
/// lattices, and groups them by brute-force isomorphism tests over all
/// permutations. Practical for `n ≤ 5`.
pub fn labeled_lattice_oracle(n: usize) -> Vec<OrderRelation> {
    let mut representatives: Vec<OrderRelation> = Vec::new();
    for poset in labeled_posets(n) {
        if !is_lattice_relation(&poset) {
            continue;
        }
        if !representatives.iter().any(|r| isomorphic_brute(r, &poset)) {
            representatives.push(poset);
        }
    }
    representatives
}

/// All partial orders on `0..n`. Element `k` is added to an order on
/// `0..k` with a down-closed set below it and an up-closed set above it,
/// everything below lying under everything above.
fn labeled_posets(n: usize) -> Vec<OrderRelation> {
    let mut current = vec![OrderRelation::discrete(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for rel in &current {
            for down_mask in 0u32..(1 << k) {
                if !closed(rel, down_mask, true) {
                    continue;
                }
                for up_mask in 0u32..(1 << k) {
                    if down_mask & up_mask != 0 || !closed(rel, up_mask, false) {
                        continue;
                    }
                    let ordered = bits(down_mask).all(|d| bits(up_mask).all(|u| rel.leq(d, u)));
                    if ordered {
                        next.push(extend(rel, down_mask, up_mask));
                    }
                }
            }
        }
        current = next;
    }
    current
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

fn closed(rel: &OrderRelation, mask: u32, downward: bool) -> bool {
    bits(mask).all(|a| {
        (0..rel.size()).all(|b| {
            let related = if downward { rel.leq(b, a) } else { rel.leq(a, b) };
            !related || mask >> b & 1 == 1
        })
    })
}

fn extend(rel: &OrderRelation, down_mask: u32, up_mask: u32) -> OrderRelation {
    let k = rel.size();
    let mut pairs: Vec<(usize, usize)> = rel.pairs().filter(|(a, b)| a != b).collect();
    pairs.extend(bits(down_mask).map(|d| (d, k)));
    pairs.extend(bits(up_mask).map(|u| (k, u)));
    OrderRelation::from_pairs(k + 1, &pairs).expect("indices in range")
}

fn isomorphic_brute(a: &OrderRelation, b: &OrderRelation) -> bool {
    let n = a.size();
    if n != b.size() {
        return false;
    }
    let profile = |r: &OrderRelation| {
        let mut p: Vec<(usize, usize)> = (0..n)
            .map(|x| (r.up_row(x).count(), (0..n).filter(|&y| r.leq(y, x)).count()))
            .collect();
        p.sort_unstable();
        p
    };
    if profile(a) != profile(b) {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| a.pairs().all(|(x, y)| b.leq(p[x], p[y])))
}

/// Walks all permutations by swapping; stops when `accept` returns true.
fn permutations(p: &mut Vec<usize>, k: usize, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return accept(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, accept) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}
