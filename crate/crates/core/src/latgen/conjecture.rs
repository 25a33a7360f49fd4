//! Search for distributive lattices whose edge augmentations do not gain
//! join-endomorphisms.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{generate_all_lattices, is_lattice_relation, transitive_closure, OrderRelation};
use crate::endo::{count_join_endomorphisms, DEFAULT_BUDGET};
use crate::error::Result;
use crate::lattice::{ElementId, Lattice};

/// Every lattice relation on the same carrier that strictly contains `rel`.
pub fn edge_augmentations(rel: &OrderRelation) -> Vec<OrderRelation> {
    let n = rel.size();
    let mut seen: HashSet<OrderRelation> = HashSet::new();
    let mut stack = vec![rel.clone()];
    seen.insert(rel.clone());
    while let Some(cur) = stack.pop() {
        for a in 0..n {
            for b in 0..n {
                if cur.comparable(a, b) {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = cur.pairs().collect();
                pairs.push((a, b));
                let grown = OrderRelation::from_pairs(n, &pairs).expect("indices in range");
                if let Ok(closed) = transitive_closure(&grown) {
                    if seen.insert(closed.clone()) {
                        stack.push(closed);
                    }
                }
            }
        }
    }
    seen.remove(rel);
    let mut out: Vec<OrderRelation> = seen.into_iter().filter(is_lattice_relation).collect();
    out.sort_by_key(|r| r.pairs().collect::<Vec<_>>());
    out
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub before: OrderRelation,
    pub after: OrderRelation,
    pub endomorphisms_before: u64,
    pub endomorphisms_after: u64,
    /// Both counts confirmed by scanning every self-map.
    pub reverified: bool,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub scope: SearchScope,
    pub lattices: usize,
    pub pairs_examined: usize,
    pub counterexamples: usize,
    pub first: Option<Counterexample>,
}

/// Which lattices take part in [`conjecture_search_in`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchScope {
    /// Both the lattice and its augmentation must be distributive.
    Distributive,
    /// Any lattice and any lattice augmentation.
    AllLattices,
}

/// For every distributive lattice with at most `n_max` elements, compares
/// `|E|` against each distributive edge augmentation. Lattices are visited
/// in an order shuffled by `seed`; the first pair where the augmentation
/// has no more join-endomorphisms is reported and re-checked by brute force.
pub fn conjecture_search(n_max: usize, seed: u64) -> Result<ConjectureReport> {
    conjecture_search_in(n_max, seed, SearchScope::Distributive)
}

pub fn conjecture_search_in(n_max: usize, seed: u64, scope: SearchScope) -> Result<ConjectureReport> {
    let generated = generate_all_lattices(n_max)?;
    let admitted = |l: &Lattice| scope == SearchScope::AllLattices || l.is_distributive();
    let mut candidates: Vec<OrderRelation> = (1..=n_max)
        .flat_map(|n| generated.of_size(n).iter().cloned())
        .filter(|r| r.to_lattice().map(|l| admitted(&l)).unwrap_or(false))
        .collect();
    candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut report = ConjectureReport {
        scope,
        lattices: candidates.len(),
        pairs_examined: 0,
        counterexamples: 0,
        first: None,
    };
    for before in &candidates {
        let l1 = before.to_lattice()?;
        let e1 = count_join_endomorphisms(&l1, DEFAULT_BUDGET)?;
        for after in edge_augmentations(before) {
            let l2 = after.to_lattice()?;
            if !admitted(&l2) {
                continue;
            }
            report.pairs_examined += 1;
            let e2 = count_join_endomorphisms(&l2, DEFAULT_BUDGET)?;
            if e2 <= e1 {
                report.counterexamples += 1;
                if report.first.is_none() {
                    let reverified = count_by_scan(&l1) == e1 && count_by_scan(&l2) == e2;
                    report.first = Some(Counterexample {
                        before: before.clone(),
                        after,
                        endomorphisms_before: e1,
                        endomorphisms_after: e2,
                        reverified,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Counts join-endomorphisms by testing all `n^n` self-maps.
fn count_by_scan(l: &Lattice) -> u64 {
    let n = l.size();
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        let id = |x: usize| ElementId::from(x);
        let ok = f[l.bottom().index()] == l.bottom().index()
            && (0..n).all(|a| (0..n).all(|b| f[l.join(id(a), id(b)).index()] == l.join(id(f[a]), id(f[b])).index()));
        if ok {
            count += 1;
        }
        let mut i = 0;
        while i < n && f[i] == n - 1 {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        f[i] += 1;
    }
}
