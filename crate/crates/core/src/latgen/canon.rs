//! Canonical labelling of small orders, for deduplication up to isomorphism.

use std::collections::BTreeMap;

use super::OrderRelation;

/// Isomorphism-invariant encoding: two relations have equal forms exactly
/// when they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    size: usize,
    rows: Vec<u64>,
}

/// Largest relation [`canonical_form`] accepts.
pub const MAX_CANONICAL_SIZE: usize = 32;

/// Returns the canonical form and a permutation `perm` such that
/// `rel.relabel(&perm)` is the canonical representative.
///
/// Elements are first split into classes by refined structural invariants
/// (ranks from both ends, cover counts, classes of neighbours); the order of
/// classes is itself invariant, and only orderings within a class are
/// searched for the minimal encoding.
pub fn canonical_form(rel: &OrderRelation) -> (CanonicalForm, Vec<usize>) {
    let n = rel.size();
    assert!(n <= MAX_CANONICAL_SIZE, "canonical form supports at most {MAX_CANONICAL_SIZE} elements");
    let colors = refine(rel);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| colors[a]);
    // cell boundaries: positions with the same colour can be permuted
    let slot_color: Vec<usize> = order.iter().map(|&a| colors[a]).collect();

    let mut search = Search {
        rel,
        colors: &colors,
        slot_color: &slot_color,
        picked: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::with_capacity(n),
        best: None,
    };
    search.run();
    let (rows, picked) = search.best.expect("at least one ordering");
    // picked[i] is the element placed at position i
    let mut perm = vec![0; n];
    for (pos, &a) in picked.iter().enumerate() {
        perm[a] = pos;
    }
    (CanonicalForm { size: n, rows }, perm)
}

struct Search<'a> {
    rel: &'a OrderRelation,
    colors: &'a [usize],
    slot_color: &'a [usize],
    picked: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    /// Relation of `a` to the elements already placed, as one word.
    fn row_code(&self, a: usize) -> u64 {
        let mut word = 0u64;
        for (j, &p) in self.picked.iter().enumerate() {
            if self.rel.leq(p, a) {
                word |= 1 << j;
            }
            if self.rel.leq(a, p) {
                word |= 1 << (32 + j);
            }
        }
        word
    }

    fn run(&mut self) {
        let i = self.picked.len();
        let n = self.slot_color.len();
        if i == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.code < *b) {
                self.best = Some((self.code.clone(), self.picked.clone()));
            }
            return;
        }
        for a in 0..n {
            if self.used[a] || self.colors[a] != self.slot_color[i] {
                continue;
            }
            let word = self.row_code(a);
            if let Some((best, _)) = &self.best {
                // prune when this prefix is already larger than the best one
                let prefix_cmp = self.code.as_slice().cmp(&best[..i]).then(word.cmp(&best[i]));
                if prefix_cmp == std::cmp::Ordering::Greater {
                    continue;
                }
            }
            self.used[a] = true;
            self.picked.push(a);
            self.code.push(word);
            self.run();
            self.code.pop();
            self.picked.pop();
            self.used[a] = false;
        }
    }
}

/// Iterated colour refinement. Colours are small integers assigned by
/// sorting signatures, so they are invariant under relabelling.
fn refine(rel: &OrderRelation) -> Vec<usize> {
    let n = rel.size();
    let below: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| rel.lt(b, a)).collect()).collect();
    let above: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| rel.lt(a, b)).collect()).collect();
    let is_cover = |lo: usize, hi: usize| !(0..n).any(|m| rel.lt(lo, m) && rel.lt(m, hi));
    let lower_covers: Vec<Vec<usize>> = (0..n)
        .map(|a| below[a].iter().copied().filter(|&b| is_cover(b, a)).collect())
        .collect();
    let upper_covers: Vec<Vec<usize>> = (0..n)
        .map(|a| above[a].iter().copied().filter(|&b| is_cover(a, b)).collect())
        .collect();

    let mut height = vec![0usize; n];
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&a| below[a].len());
    for &a in &by_size {
        height[a] = lower_covers[a].iter().map(|&b| height[b] + 1).max().unwrap_or(0);
    }
    let mut depth = vec![0usize; n];
    for &a in by_size.iter().rev() {
        depth[a] = upper_covers[a].iter().map(|&b| depth[b] + 1).max().unwrap_or(0);
    }

    let initial: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            vec![
                height[a],
                depth[a],
                below[a].len(),
                above[a].len(),
                lower_covers[a].len(),
                upper_covers[a].len(),
            ]
        })
        .collect();
    let mut colors = compress(&initial);
    loop {
        let signatures: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let mut lo: Vec<usize> = lower_covers[a].iter().map(|&b| colors[b]).collect();
                let mut hi: Vec<usize> = upper_covers[a].iter().map(|&b| colors[b]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                let mut sig = vec![colors[a], usize::MAX];
                sig.extend(lo);
                sig.push(usize::MAX);
                sig.extend(hi);
                sig
            })
            .collect();
        let next = compress(&signatures);
        let classes = |c: &[usize]| c.iter().collect::<std::collections::HashSet<_>>().len();
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn compress(signatures: &[Vec<usize>]) -> Vec<usize> {
    let ids: BTreeMap<&Vec<usize>, usize> = {
        let mut distinct: Vec<&Vec<usize>> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect()
    };
    signatures.iter().map(|s| ids[s]).collect()
}
