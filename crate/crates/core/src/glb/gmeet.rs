//! Approximation from above, for arbitrary finite lattices.
//!
//! Both algorithms start from `σ = ⋀S` pointwise and repeatedly apply two
//! corrections to any pair `(u, v)` with `w = u ⊔ v`:
//!
//! 1. `σ(u) ⊔ σ(v) ⊏ σ(w)`: set `σ(w) ← σ(u) ⊔ σ(v)`;
//! 2. `σ(u) ⊔ σ(v) ⋢ σ(w)`: set `σ(u) ← σ(u) ⊓ σ(w)` and `σ(v) ← σ(v) ⊓ σ(w)`.
//!
//! Each correction strictly lowers σ somewhere and keeps σ above the
//! target, so when no pair violates join preservation σ is the answer.

use std::collections::{BTreeSet, HashSet};

use super::{validate, Algorithm, MeetResult};
use crate::endo::{pointwise_meet_many, Endofunction};
use crate::error::{Error, Result};
use crate::lattice::{CountedLattice, ElementId, Lattice};

/// One observed change of σ.
pub struct SigmaUpdate<'a> {
    pub before: &'a [ElementId],
    pub after: &'a [ElementId],
    /// Pair-set bookkeeping after the change (GMeet+ only).
    pub state: Option<&'a GMeetState>,
}

type Observer<'o> = Option<&'o mut dyn FnMut(&SigmaUpdate<'_>)>;

pub fn gmeet(lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
    run_gmeet(lattice, set, None)
}

/// [`gmeet`], reporting every correction to `observer`.
pub fn gmeet_observed(
    lattice: &Lattice,
    set: &[Endofunction],
    observer: &mut dyn FnMut(&SigmaUpdate<'_>),
) -> Result<MeetResult> {
    run_gmeet(lattice, set, Some(observer))
}

fn run_gmeet(lattice: &Lattice, set: &[Endofunction], observer: Observer<'_>) -> Result<MeetResult> {
    validate(lattice, set)?;
    if set.len() == 1 {
        return Ok(MeetResult::unchanged(&set[0], Algorithm::GMeet));
    }
    let view = lattice.instrumented_view();
    let sigma = pointwise_meet_many(lattice, set)?;
    let (sigma, reductions) = sweep_corrections(&view, sigma.values().to_vec(), observer);
    Ok(MeetResult {
        result: Endofunction::from_values_unchecked(sigma),
        op_counts: view.counts(),
        algorithm: Algorithm::GMeet,
        sigma_reductions: reductions,
    })
}

/// Scans pairs `u < v` in lexicographic order, correcting as it goes, until
/// a full sweep changes nothing.
fn sweep_corrections(
    view: &CountedLattice<'_>,
    mut sigma: Vec<ElementId>,
    mut observer: Observer<'_>,
) -> (Vec<ElementId>, u64) {
    let l = view.lattice();
    let n = l.size();
    let mut reductions = 0u64;
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in u + 1..n {
                let w = view.join(u.into(), v.into()).index();
                let joined = view.join(sigma[u], sigma[v]);
                if joined == sigma[w] {
                    continue;
                }
                let before = observer.as_ref().map(|_| sigma.clone());
                if l.leq(joined, sigma[w]) {
                    sigma[w] = joined;
                    reductions += 1;
                } else {
                    let top = sigma[w];
                    for x in [u, v] {
                        let lowered = view.meet(sigma[x], top);
                        if lowered != sigma[x] {
                            sigma[x] = lowered;
                            reductions += 1;
                        }
                    }
                }
                changed = true;
                if let (Some(obs), Some(before)) = (observer.as_mut(), before) {
                    obs(&SigmaUpdate {
                        before: &before,
                        after: &sigma,
                        state: None,
                    });
                }
            }
        }
        if !changed {
            return (sigma, reductions);
        }
    }
}

/// Greatest join-endomorphism below an arbitrary map (see
/// [`greatest_join_endomorphism_below`](super::greatest_join_endomorphism_below)).
pub(crate) fn correct_from(lattice: &Lattice, start: Endofunction) -> Endofunction {
    let view = lattice.instrumented_view();
    let mut values = start.values().to_vec();
    values[lattice.bottom().index()] = lattice.bottom();
    Endofunction::from_values_unchecked(sweep_corrections(&view, values, None).0)
}

/// Which pairs GMeet+ tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairUniverse {
    /// Every pair `u < v`.
    AllPairs,
    /// Pairs drawn from a common `⇓w = covers_of(w) ∪ {w}`; sufficient on
    /// modular lattices.
    CoverPairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// `σ(u) ⊔ σ(v) = σ(w)`
    Support = 0,
    /// `σ(u) ⊔ σ(v) ⊏ σ(w)`
    Conflict = 1,
    /// `σ(u) ⊔ σ(v) ⋢ σ(w)`
    Failure = 2,
}

/// σ together with the support, conflict and failure pair sets of every
/// `w`. Each pair lives in exactly one bucket; its position is tracked so
/// removal is O(1).
#[derive(Clone, Debug)]
pub struct GMeetState {
    sigma: Vec<ElementId>,
    pairs: Vec<(ElementId, ElementId)>,
    join_of: Vec<ElementId>,
    class: Vec<PairClass>,
    position: Vec<usize>,
    buckets: [Vec<Vec<usize>>; 3],
    nonempty: [BTreeSet<usize>; 3],
    with_join: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl GMeetState {
    fn new(view: &CountedLattice<'_>, sigma: Vec<ElementId>, universe: PairUniverse) -> Self {
        let l = view.lattice();
        let n = l.size();
        let pairs: Vec<(ElementId, ElementId)> = match universe {
            PairUniverse::AllPairs => l
                .elements()
                .flat_map(|u| l.elements().skip(u.index() + 1).map(move |v| (u, v)))
                .collect(),
            PairUniverse::CoverPairs => {
                let mut seen = HashSet::new();
                for w in l.elements() {
                    let mut group: Vec<ElementId> = l.covers_of(w).to_vec();
                    group.push(w);
                    group.sort();
                    for (i, &u) in group.iter().enumerate() {
                        for &v in &group[i + 1..] {
                            seen.insert((u, v));
                        }
                    }
                }
                let mut pairs: Vec<_> = seen.into_iter().collect();
                pairs.sort();
                pairs
            }
        };
        let join_of: Vec<ElementId> = pairs.iter().map(|&(u, v)| view.join(u, v)).collect();
        let mut with_join = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (pid, &(u, v)) in pairs.iter().enumerate() {
            with_join[join_of[pid].index()].push(pid);
            incident[u.index()].push(pid);
            incident[v.index()].push(pid);
        }
        let mut state = GMeetState {
            sigma,
            class: vec![PairClass::Support; pairs.len()],
            position: vec![0; pairs.len()],
            pairs,
            join_of,
            buckets: std::array::from_fn(|_| vec![Vec::new(); n]),
            nonempty: Default::default(),
            with_join,
            incident,
        };
        for pid in 0..state.pairs.len() {
            let c = state.evaluate(view, pid);
            state.place(pid, c);
        }
        state
    }

    pub fn sigma(&self) -> &[ElementId] {
        &self.sigma
    }

    /// Pairs currently in the `class` set of `w`.
    pub fn pairs(&self, w: ElementId, class: PairClass) -> Vec<(ElementId, ElementId)> {
        self.buckets[class as usize][w.index()]
            .iter()
            .map(|&pid| self.pairs[pid])
            .collect()
    }

    pub fn tracked_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Checks that each pair sits in exactly one set, the set of its own
    /// join, and that its class matches the current σ.
    pub fn check_invariants(&self, lattice: &Lattice) -> bool {
        let mut seen = vec![0usize; self.pairs.len()];
        for (k, per_w) in self.buckets.iter().enumerate() {
            for (w, bucket) in per_w.iter().enumerate() {
                for (i, &pid) in bucket.iter().enumerate() {
                    seen[pid] += 1;
                    if self.join_of[pid].index() != w || self.class[pid] as usize != k || self.position[pid] != i {
                        return false;
                    }
                }
            }
        }
        seen.iter().all(|&c| c == 1)
            && (0..self.pairs.len()).all(|pid| {
                let (u, v) = self.pairs[pid];
                let j = lattice.join(self.sigma[u.index()], self.sigma[v.index()]);
                let sw = self.sigma[self.join_of[pid].index()];
                let actual = if j == sw {
                    PairClass::Support
                } else if lattice.leq(j, sw) {
                    PairClass::Conflict
                } else {
                    PairClass::Failure
                };
                actual == self.class[pid]
            })
    }

    fn evaluate(&self, view: &CountedLattice<'_>, pid: usize) -> PairClass {
        let (u, v) = self.pairs[pid];
        let joined = view.join(self.sigma[u.index()], self.sigma[v.index()]);
        let sw = self.sigma[self.join_of[pid].index()];
        if joined == sw {
            PairClass::Support
        } else if view.leq(joined, sw) {
            PairClass::Conflict
        } else {
            PairClass::Failure
        }
    }

    fn place(&mut self, pid: usize, class: PairClass) {
        let w = self.join_of[pid].index();
        let bucket = &mut self.buckets[class as usize][w];
        self.position[pid] = bucket.len();
        bucket.push(pid);
        self.class[pid] = class;
        self.nonempty[class as usize].insert(w);
    }

    fn unplace(&mut self, pid: usize) {
        let k = self.class[pid] as usize;
        let w = self.join_of[pid].index();
        let bucket = &mut self.buckets[k][w];
        let i = self.position[pid];
        bucket.swap_remove(i);
        if let Some(&moved) = bucket.get(i) {
            self.position[moved] = i;
        }
        if bucket.is_empty() {
            self.nonempty[k].remove(&w);
        }
    }

    fn reclassify(&mut self, view: &CountedLattice<'_>, pid: usize) {
        let c = self.evaluate(view, pid);
        if c != self.class[pid] {
            self.unplace(pid);
            self.place(pid, c);
        }
    }

    /// Lowers σ(x) and re-tests every pair whose status may have changed:
    /// the pairs joining to `x` (supports among them become failures) and
    /// the pairs having `x` as a component.
    fn lower(&mut self, view: &CountedLattice<'_>, x: ElementId, value: ElementId) {
        self.sigma[x.index()] = value;
        for i in 0..self.with_join[x.index()].len() {
            let pid = self.with_join[x.index()][i];
            self.reclassify(view, pid);
        }
        for i in 0..self.incident[x.index()].len() {
            let pid = self.incident[x.index()][i];
            self.reclassify(view, pid);
        }
    }

    /// Lowest-index `w` with a pair in the given set, and the last pair added.
    fn next_in(&self, class: PairClass) -> Option<usize> {
        let w = *self.nonempty[class as usize].iter().next()?;
        self.buckets[class as usize][w].last().copied()
    }
}

pub fn gmeet_plus(lattice: &Lattice, set: &[Endofunction], universe: PairUniverse) -> Result<MeetResult> {
    run_gmeet_plus(lattice, set, universe, None)
}

pub fn gmeet_plus_observed(
    lattice: &Lattice,
    set: &[Endofunction],
    universe: PairUniverse,
    observer: &mut dyn FnMut(&SigmaUpdate<'_>),
) -> Result<MeetResult> {
    run_gmeet_plus(lattice, set, universe, Some(observer))
}

/// GMeet+ restricted to cover pairs; requires a modular lattice.
pub fn gmeet_plus_modular(lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
    if !lattice.is_modular() {
        return Err(Error::NotModular);
    }
    let mut r = gmeet_plus(lattice, set, PairUniverse::CoverPairs)?;
    r.algorithm = Algorithm::GMeetPlusModular;
    Ok(r)
}

fn run_gmeet_plus(
    lattice: &Lattice,
    set: &[Endofunction],
    universe: PairUniverse,
    mut observer: Observer<'_>,
) -> Result<MeetResult> {
    validate(lattice, set)?;
    if set.len() == 1 {
        return Ok(MeetResult::unchanged(&set[0], Algorithm::GMeetPlus));
    }
    let view = lattice.instrumented_view();
    let sigma = pointwise_meet_many(lattice, set)?.values().to_vec();
    let mut state = GMeetState::new(&view, sigma, universe);
    let mut reductions = 0u64;

    let watching = observer.is_some();
    let mut report = |state: &GMeetState, before: Option<Vec<ElementId>>| {
        if let (Some(obs), Some(before)) = (observer.as_mut(), before) {
            obs(&SigmaUpdate {
                before: &before,
                after: &state.sigma,
                state: Some(state),
            });
        }
    };

    loop {
        // inner loop: drain failures with correction (2), one coordinate at a time
        while let Some(pid) = state.next_in(PairClass::Failure) {
            let (x, y) = state.pairs[pid];
            let z = state.join_of[pid];
            for c in [x, y] {
                let lowered = view.meet(state.sigma[c.index()], state.sigma[z.index()]);
                if lowered != state.sigma[c.index()] {
                    let before = watching.then(|| state.sigma.clone());
                    state.lower(&view, c, lowered);
                    reductions += 1;
                    report(&state, before);
                }
            }
            if state.class[pid] == PairClass::Failure {
                // cannot happen with exact bookkeeping; keeps the loop finite regardless
                state.reclassify(&view, pid);
            }
        }
        // outer loop: one conflict with correction (1)
        let Some(pid) = state.next_in(PairClass::Conflict) else {
            break;
        };
        let (u, v) = state.pairs[pid];
        let w = state.join_of[pid];
        let joined = view.join(state.sigma[u.index()], state.sigma[v.index()]);
        let before = watching.then(|| state.sigma.clone());
        state.lower(&view, w, joined);
        reductions += 1;
        report(&state, before);
    }

    Ok(MeetResult {
        result: Endofunction::from_values_unchecked(state.sigma),
        op_counts: view.counts(),
        algorithm: Algorithm::GMeetPlus,
        sigma_reductions: reductions,
    })
}

/// `f(a ⊔ b) = f(a) ⊔ f(b)` for all `a, b` in a common `⇓c`.
pub fn verify_01_relations_preserving(lattice: &Lattice, f: &Endofunction) -> bool {
    lattice.elements().all(|c| {
        let mut group = lattice.covers_of(c).to_vec();
        group.push(c);
        group.iter().enumerate().all(|(i, &a)| {
            group[i + 1..]
                .iter()
                .all(|&b| f.apply(lattice.join(a, b)) == lattice.join(f.apply(a), f.apply(b)))
        })
    })
}
