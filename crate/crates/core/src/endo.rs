//! Self-maps on a lattice and the space `E(L)` of join-endomorphisms.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{ElementId, Lattice};

/// Default cap on the estimated number of candidate assignments an
/// enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A total map from lattice elements to lattice elements, stored as the
/// image of each element id. It is not necessarily a join-endomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endofunction {
    values: Vec<ElementId>,
}

impl Endofunction {
    pub fn new(lattice: &Lattice, values: Vec<ElementId>) -> Result<Self> {
        if values.len() != lattice.size() {
            return Err(Error::SizeMismatch {
                expected: lattice.size(),
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.index() >= lattice.size()) {
            return Err(Error::InvalidElement(v.index(), lattice.size()));
        }
        Ok(Endofunction { values })
    }

    pub fn from_indices(lattice: &Lattice, values: &[usize]) -> Result<Self> {
        Self::new(lattice, values.iter().map(|&v| ElementId::from(v)).collect())
    }

    pub(crate) fn from_values_unchecked(values: Vec<ElementId>) -> Self {
        Endofunction { values }
    }

    pub fn identity(lattice: &Lattice) -> Self {
        Endofunction {
            values: lattice.elements().collect(),
        }
    }

    pub fn constant(lattice: &Lattice, c: ElementId) -> Self {
        Endofunction {
            values: vec![c; lattice.size()],
        }
    }

    #[inline]
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.values[a.index()]
    }

    pub fn values(&self) -> &[ElementId] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parses the single-line text form `v0 v1 … v(n-1)`.
    pub fn parse(lattice: &Lattice, text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element id `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(lattice, &values)
    }
}

impl fmt::Display for Endofunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `f(⊥) = ⊥` and `f(a ⊔ b) = f(a) ⊔ f(b)` for all pairs.
pub fn is_join_endomorphism(lattice: &Lattice, f: &Endofunction) -> bool {
    f.apply(lattice.bottom()) == lattice.bottom()
        && lattice.elements().all(|a| {
            lattice
                .elements()
                .skip(a.index() + 1)
                .all(|b| f.apply(lattice.join(a, b)) == lattice.join(f.apply(a), f.apply(b)))
        })
}

pub fn is_monotone(lattice: &Lattice, f: &Endofunction) -> bool {
    lattice.elements().all(|a| {
        lattice
            .up_set(a)
            .into_iter()
            .all(|b| lattice.leq(f.apply(a), f.apply(b)))
    })
}

/// No element is mapped strictly below itself.
pub fn is_non_reducing(lattice: &Lattice, f: &Endofunction) -> bool {
    lattice.elements().all(|e| !lattice.lt(f.apply(e), e))
}

/// `f ⊑ g` pointwise.
pub fn pointwise_leq(lattice: &Lattice, f: &Endofunction, g: &Endofunction) -> bool {
    lattice.elements().all(|a| lattice.leq(f.apply(a), g.apply(a)))
}

/// `σ(c) = ⋀{ f(c) | f ∈ S }`. The result need not be a join-endomorphism.
pub fn pointwise_meet_many(lattice: &Lattice, set: &[Endofunction]) -> Result<Endofunction> {
    let (first, rest) = set.split_first().ok_or(Error::EmptySet)?;
    let mut values = first.values.clone();
    for f in rest {
        for (v, &x) in values.iter_mut().zip(&f.values) {
            *v = lattice.meet(*v, x);
        }
    }
    Ok(Endofunction { values })
}

/// Pointwise join; the pointwise join of join-endomorphisms is again one.
pub fn pointwise_join_many(lattice: &Lattice, set: &[Endofunction]) -> Endofunction {
    let mut values = vec![lattice.bottom(); lattice.size()];
    for f in set {
        for (v, &x) in values.iter_mut().zip(&f.values) {
            *v = lattice.join(*v, x);
        }
    }
    Endofunction { values }
}

/// Upper estimate of the assignments visited when enumerating join
/// endomorphisms: the product over join-irreducibles of the number of
/// candidate images (all of `L`, or `↓bound(j)`).
pub fn enumeration_estimate(lattice: &Lattice, bound: Option<&Endofunction>) -> u128 {
    lattice
        .join_irreducibles()
        .iter()
        .map(|&j| match bound {
            Some(b) => lattice.down_bits(b.apply(j)).count() as u128,
            None => lattice.size() as u128,
        })
        .fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// Streams every join-endomorphism of `lattice` exactly once.
pub fn enumerate_join_endomorphisms(lattice: &Lattice, budget: u128) -> Result<JoinEndoIter<'_>> {
    JoinEndoIter::new(lattice, None, budget)
}

/// Streams every join-endomorphism pointwise below `bound`.
pub fn enumerate_join_endomorphisms_below<'a>(
    lattice: &'a Lattice,
    bound: &Endofunction,
    budget: u128,
) -> Result<JoinEndoIter<'a>> {
    JoinEndoIter::new(lattice, Some(bound.clone()), budget)
}

pub fn count_join_endomorphisms(lattice: &Lattice, budget: u128) -> Result<u64> {
    Ok(enumerate_join_endomorphisms(lattice, budget)?.count() as u64)
}

/// Backtracking enumeration over images of the join-irreducibles.
///
/// Join-irreducibles are assigned in linear-extension order; every other
/// value is forced to `f(e) = ⋁ f(↓ʲe)`. As soon as all irreducibles below
/// some `w` are fixed, `f(w)` is known and every pair `(a, b)` with
/// `a ⊔ b = w` is checked, so partial assignments that already break join
/// preservation are pruned.
pub struct JoinEndoIter<'a> {
    lattice: &'a Lattice,
    bound: Option<Endofunction>,
    irreducibles: Vec<ElementId>,
    /// Elements whose value becomes determined right after step `k`.
    settled_at: Vec<Vec<ElementId>>,
    /// Pairs `(a, b)`, `a < b`, grouped by `a ⊔ b`.
    pairs_by_join: Vec<Vec<(ElementId, ElementId)>>,
    /// Join-irreducibles strictly below each irreducible.
    lower_irreducibles: Vec<Vec<usize>>,
    candidates: Vec<Vec<ElementId>>,
    position: Vec<usize>,
    values: Vec<ElementId>,
    depth: usize,
    started: bool,
    finished: bool,
}

impl<'a> JoinEndoIter<'a> {
    fn new(lattice: &'a Lattice, bound: Option<Endofunction>, budget: u128) -> Result<Self> {
        if let Some(b) = &bound {
            if b.len() != lattice.size() {
                return Err(Error::SizeMismatch {
                    expected: lattice.size(),
                    got: b.len(),
                });
            }
        }
        let estimated = enumeration_estimate(lattice, bound.as_ref());
        if estimated > budget {
            return Err(Error::BudgetExceeded { estimated, budget });
        }
        let irreducibles = lattice.join_irreducibles().to_vec();
        let k = irreducibles.len();
        let mut step_of = vec![0usize; lattice.size()];
        for (i, &j) in irreducibles.iter().enumerate() {
            for e in lattice.up_set(j) {
                step_of[e.index()] = step_of[e.index()].max(i + 1);
            }
        }
        let mut settled_at = vec![Vec::new(); k + 1];
        for e in lattice.elements() {
            settled_at[step_of[e.index()]].push(e);
        }
        let mut pairs_by_join = vec![Vec::new(); lattice.size()];
        for a in lattice.elements() {
            for b in lattice.elements().skip(a.index() + 1) {
                pairs_by_join[lattice.join(a, b).index()].push((a, b));
            }
        }
        let lower_irreducibles = irreducibles
            .iter()
            .map(|&j| (0..k).filter(|&i| lattice.lt(irreducibles[i], j)).collect())
            .collect();
        Ok(JoinEndoIter {
            lattice,
            bound,
            irreducibles,
            settled_at,
            pairs_by_join,
            lower_irreducibles,
            candidates: vec![Vec::new(); k],
            position: vec![0; k],
            values: vec![lattice.bottom(); lattice.size()],
            depth: 0,
            started: false,
            finished: false,
        })
    }

    fn candidates_for(&self, depth: usize) -> Vec<ElementId> {
        let l = self.lattice;
        let j = self.irreducibles[depth];
        let floor = l.big_join(
            self.lower_irreducibles[depth]
                .iter()
                .map(|&i| self.values[self.irreducibles[i].index()]),
        );
        let ceiling = self.bound.as_ref().map_or(l.top(), |b| b.apply(j));
        l.up_set(floor)
            .into_iter()
            .filter(|&v| l.leq(v, ceiling))
            .collect()
    }

    /// Settles every element determined after `step` assignments and checks
    /// all pairs whose join was just settled.
    fn settle(&mut self, step: usize) -> bool {
        let l = self.lattice;
        for idx in 0..self.settled_at[step].len() {
            let e = self.settled_at[step][idx];
            if l.is_join_irreducible(e) {
                continue;
            }
            let v = l.big_join(l.jdown(e).into_iter().map(|j| self.values[j.index()]));
            self.values[e.index()] = v;
        }
        self.settled_at[step].iter().all(|&w| {
            let fw = self.values[w.index()];
            self.pairs_by_join[w.index()]
                .iter()
                .all(|&(a, b)| l.join(self.values[a.index()], self.values[b.index()]) == fw)
        })
    }

    fn current(&self) -> Endofunction {
        Endofunction {
            values: self.values.clone(),
        }
    }
}

impl Iterator for JoinEndoIter<'_> {
    type Item = Endofunction;

    fn next(&mut self) -> Option<Endofunction> {
        if self.finished {
            return None;
        }
        let k = self.irreducibles.len();
        if !self.started {
            self.started = true;
            let ok = self.settle(0);
            if k == 0 {
                self.finished = true;
                return ok.then(|| self.current());
            }
            if !ok {
                self.finished = true;
                return None;
            }
            self.depth = 0;
            self.candidates[0] = self.candidates_for(0);
            self.position[0] = 0;
        } else {
            self.depth = k - 1;
            self.position[self.depth] += 1;
        }
        loop {
            let d = self.depth;
            if self.position[d] >= self.candidates[d].len() {
                if d == 0 {
                    self.finished = true;
                    return None;
                }
                self.depth -= 1;
                self.position[self.depth] += 1;
                continue;
            }
            let j = self.irreducibles[d];
            self.values[j.index()] = self.candidates[d][self.position[d]];
            if !self.settle(d + 1) {
                self.position[d] += 1;
                continue;
            }
            if d + 1 == k {
                return Some(self.current());
            }
            self.depth += 1;
            self.candidates[self.depth] = self.candidates_for(self.depth);
            self.position[self.depth] = 0;
        }
    }
}

/// Sampling parameters for [`random_join_endomorphism_with`].
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    /// Rejection attempts on non-distributive lattices before repairing.
    pub retry_cap: usize,
    /// Lower the last rejected candidate to the greatest join-endomorphism
    /// below it instead of failing.
    pub repair: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            retry_cap: 10_000,
            repair: true,
        }
    }
}

/// Random join-endomorphism, deterministic in `seed`.
///
/// Join-irreducibles get independent uniform images, extended by
/// `f(e) = ⋁ f(↓ʲe)`. On distributive lattices the extension is always a
/// join-endomorphism. Otherwise candidates are rejected until one passes,
/// and after `retry_cap` failures the last candidate is lowered to the
/// greatest join-endomorphism below it. The distribution is not uniform
/// over `E(L)`; enumerate and pick an index when uniformity matters.
pub fn random_join_endomorphism(lattice: &Lattice, seed: u64) -> Result<Endofunction> {
    random_join_endomorphism_with(lattice, &mut ChaCha8Rng::seed_from_u64(seed), SamplerConfig::default())
}

pub fn random_join_endomorphism_with<R: Rng>(
    lattice: &Lattice,
    rng: &mut R,
    config: SamplerConfig,
) -> Result<Endofunction> {
    let n = lattice.size();
    let extend = |rng: &mut R| {
        let mut assigned = vec![lattice.bottom(); n];
        for &j in lattice.join_irreducibles() {
            assigned[j.index()] = ElementId::from(rng.gen_range(0..n));
        }
        let values = lattice
            .elements()
            .map(|e| lattice.big_join(lattice.jdown(e).into_iter().map(|j| assigned[j.index()])))
            .collect();
        Endofunction { values }
    };
    if lattice.is_distributive() {
        return Ok(extend(rng));
    }
    let mut last = None;
    for _ in 0..config.retry_cap.max(1) {
        let f = extend(rng);
        if is_join_endomorphism(lattice, &f) {
            return Ok(f);
        }
        last = Some(f);
    }
    match (config.repair, last) {
        (true, Some(f)) => Ok(crate::glb::greatest_join_endomorphism_below(lattice, &f)),
        _ => Err(Error::RetryExhausted(config.retry_cap)),
    }
}
