//! Finite lattices with dense element indexing.
//!
//! A [`Lattice`] stores its order as bit rows plus full join and meet
//! tables, so every binary lattice operation is a table lookup. Covers,
//! join-irreducibles, a linear extension and the height are derived once
//! at build time. Distributivity and modularity are computed lazily by
//! scanning the defining identities over all triples and then cached.

mod counted;
mod io;
mod spec;

pub use counted::{CountedLattice, OpCounts};
pub use io::{read_cover_relation, write_cover_relation};
pub use spec::LatticeSpec;

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Index of an element inside its owning lattice, in `0..n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const UNSET: u32 = u32::MAX;
const UNDEFINED: u32 = u32::MAX - 1;

/// Structural facts a builder already knows, so the O(n³) scans can be
/// skipped for large named families.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KnownFlags {
    pub distributive: Option<bool>,
    pub modular: Option<bool>,
}

pub struct Lattice {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    join: Vec<ElementId>,
    meet: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    lower_covers: Vec<Vec<ElementId>>,
    upper_covers: Vec<Vec<ElementId>>,
    join_irreducibles: Vec<ElementId>,
    is_join_irreducible: Vec<bool>,
    linear_extension: Vec<ElementId>,
    height: usize,
    distributive: OnceLock<bool>,
    modular: OnceLock<bool>,
    subtraction: Vec<AtomicU32>,
}

impl Clone for Lattice {
    fn clone(&self) -> Self {
        Lattice {
            n: self.n,
            up: self.up.clone(),
            down: self.down.clone(),
            join: self.join.clone(),
            meet: self.meet.clone(),
            bottom: self.bottom,
            top: self.top,
            lower_covers: self.lower_covers.clone(),
            upper_covers: self.upper_covers.clone(),
            join_irreducibles: self.join_irreducibles.clone(),
            is_join_irreducible: self.is_join_irreducible.clone(),
            linear_extension: self.linear_extension.clone(),
            height: self.height,
            distributive: self.distributive.clone(),
            modular: self.modular.clone(),
            subtraction: (0..self.n * self.n).map(|_| AtomicU32::new(UNSET)).collect(),
        }
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.n)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .field("covers", &self.cover_edges())
            .finish()
    }
}

impl PartialEq for Lattice {
    /// Labelled equality: same size and the same order relation.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Builds a lattice from one of the named families or a cover relation.
    pub fn build(spec: &LatticeSpec) -> Result<Lattice> {
        spec.build()
    }

    /// Builds a lattice from an order given as up-sets: `up[a]` holds every
    /// `b` with `a ⊑ b`. The relation must already be reflexive, antisymmetric
    /// and transitive.
    pub fn from_up_sets(up: Vec<BitSet>) -> Result<Lattice> {
        Self::from_up_sets_with(up, KnownFlags::default())
    }

    pub(crate) fn from_up_sets_with(up: Vec<BitSet>, flags: KnownFlags) -> Result<Lattice> {
        let n = up.len();
        if n == 0 {
            return Err(Error::NotAnOrder("empty carrier".into()));
        }
        for (a, row) in up.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAnOrder(format!("row {a} has width {}", row.len())));
            }
            if !row.contains(a) {
                return Err(Error::NotAnOrder(format!("{a} ⋢ {a}")));
            }
            for b in row.iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::AntisymmetryBroken {
                        a: a.into(),
                        b: b.into(),
                    });
                }
                if !up[b].is_subset(row) {
                    return Err(Error::NotAnOrder(format!("not transitive through {a} ⊑ {b}")));
                }
            }
        }

        let mut down = vec![BitSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }

        // x ⊏ y implies |↓x| < |↓y|, so sorting by down-set size is a linear extension.
        let mut linear_extension: Vec<usize> = (0..n).collect();
        linear_extension.sort_by_key(|&a| (down[a].count(), a));
        let mut rank = vec![0usize; n];
        for (r, &a) in linear_extension.iter().enumerate() {
            rank[a] = r;
        }
        let ranked = |sets: &Vec<BitSet>| -> Vec<BitSet> {
            sets.iter()
                .map(|s| {
                    let mut r = BitSet::new(n);
                    for x in s.iter() {
                        r.insert(rank[x]);
                    }
                    r
                })
                .collect()
        };
        let up_ranked = ranked(&up);
        let down_ranked = ranked(&down);

        let bottom = linear_extension[0];
        let top = linear_extension[n - 1];
        if up[bottom].count() != n {
            return Err(Error::NotALattice {
                a: bottom.into(),
                b: linear_extension[1].into(),
                bound: "greatest lower bound",
            });
        }
        if down[top].count() != n {
            return Err(Error::NotALattice {
                a: top.into(),
                b: linear_extension[n - 2].into(),
                bound: "least upper bound",
            });
        }

        let mut join = vec![ElementId(0); n * n];
        let mut meet = vec![ElementId(0); n * n];
        for a in 0..n {
            for b in a..n {
                let mut common = up_ranked[a].clone();
                common.intersect_with(&up_ranked[b]);
                let lub = common
                    .first()
                    .map(|r| linear_extension[r])
                    .filter(|&c| up_ranked[c] == common)
                    .ok_or(Error::NotALattice {
                        a: a.into(),
                        b: b.into(),
                        bound: "least upper bound",
                    })?;
                let mut common = down_ranked[a].clone();
                common.intersect_with(&down_ranked[b]);
                let glb = common
                    .last()
                    .map(|r| linear_extension[r])
                    .filter(|&c| down_ranked[c] == common)
                    .ok_or(Error::NotALattice {
                        a: a.into(),
                        b: b.into(),
                        bound: "greatest lower bound",
                    })?;
                join[a * n + b] = lub.into();
                join[b * n + a] = lub.into();
                meet[a * n + b] = glb.into();
                meet[b * n + a] = glb.into();
            }
        }

        // Covers by transitive reduction: scan the strict down-set from the
        // highest rank down, keeping an element only if it is not below one
        // already kept.
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            let mut rest = down_ranked[a].clone();
            rest.remove(rank[a]);
            let mut covers = Vec::new();
            while let Some(r) = rest.last() {
                let b = linear_extension[r];
                covers.push(ElementId::from(b));
                rest.difference_with(&down_ranked[b]);
            }
            covers.sort();
            for &b in &covers {
                upper_covers[b.index()].push(ElementId::from(a));
            }
            lower_covers[a] = covers;
        }
        for list in &mut upper_covers {
            list.sort();
        }

        let is_join_irreducible: Vec<bool> = (0..n).map(|a| lower_covers[a].len() == 1).collect();
        let join_irreducibles = linear_extension
            .iter()
            .copied()
            .filter(|&a| is_join_irreducible[a])
            .map(ElementId::from)
            .collect();

        let mut level = vec![0usize; n];
        for &a in &linear_extension {
            level[a] = lower_covers[a]
                .iter()
                .map(|b| level[b.index()] + 1)
                .max()
                .unwrap_or(0);
        }
        let height = level[top];

        let lattice = Lattice {
            n,
            up,
            down,
            join,
            meet,
            bottom: bottom.into(),
            top: top.into(),
            lower_covers,
            upper_covers,
            join_irreducibles,
            is_join_irreducible,
            linear_extension: linear_extension.into_iter().map(ElementId::from).collect(),
            height,
            distributive: OnceLock::new(),
            modular: OnceLock::new(),
            subtraction: (0..n * n).map(|_| AtomicU32::new(UNSET)).collect(),
        };
        if let Some(d) = flags.distributive {
            let _ = lattice.distributive.set(d);
        }
        if let Some(m) = flags.modular {
            let _ = lattice.modular.set(m);
        }
        Ok(lattice)
    }

    /// Builds a lattice from cover (or any generating) edges `a ⊑ b`.
    pub fn from_cover_relation(n: usize, edges: &[(usize, usize)]) -> Result<Lattice> {
        let up = reflexive_transitive_closure(n, edges)?;
        Self::from_up_sets(up)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> {
        (0..self.n as u32).map(ElementId)
    }

    #[inline]
    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b.index())
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.n + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.n + b.index()]
    }

    /// `⋁ set`, with `⋁∅ = ⊥`.
    pub fn big_join<I: IntoIterator<Item = ElementId>>(&self, set: I) -> ElementId {
        set.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `⋀ set`, with `⋀∅ = ⊤`.
    pub fn big_meet<I: IntoIterator<Item = ElementId>>(&self, set: I) -> ElementId {
        set.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `↓c = { b | b ⊑ c }`, in increasing index order.
    pub fn down_set(&self, c: ElementId) -> Vec<ElementId> {
        self.down[c.index()].iter().map(ElementId::from).collect()
    }

    pub fn up_set(&self, c: ElementId) -> Vec<ElementId> {
        self.up[c.index()].iter().map(ElementId::from).collect()
    }

    /// `↓ʲc = ↓c ∩ J(L)`.
    pub fn jdown(&self, c: ElementId) -> Vec<ElementId> {
        self.down[c.index()]
            .iter()
            .filter(|&b| self.is_join_irreducible[b])
            .map(ElementId::from)
            .collect()
    }

    pub(crate) fn down_bits(&self, c: ElementId) -> &BitSet {
        &self.down[c.index()]
    }

    pub(crate) fn up_bits(&self, c: ElementId) -> &BitSet {
        &self.up[c.index()]
    }

    /// Elements covered by `a`, sorted by index.
    pub fn covers_of(&self, a: ElementId) -> &[ElementId] {
        &self.lower_covers[a.index()]
    }

    /// Elements covering `a`, sorted by index.
    pub fn covered_by(&self, a: ElementId) -> &[ElementId] {
        &self.upper_covers[a.index()]
    }

    /// All cover edges `(b, a)` with `b ⋖ a`, sorted lexicographically.
    pub fn cover_edges(&self) -> Vec<(ElementId, ElementId)> {
        let mut edges: Vec<_> = self
            .elements()
            .flat_map(|a| self.covers_of(a).iter().map(move |&b| (b, a)))
            .collect();
        edges.sort();
        edges
    }

    /// Join-irreducible elements, listed in linear-extension order.
    pub fn join_irreducibles(&self) -> &[ElementId] {
        &self.join_irreducibles
    }

    #[inline]
    pub fn is_join_irreducible(&self, a: ElementId) -> bool {
        self.is_join_irreducible[a.index()]
    }

    /// Every element, ordered so that `a ⊏ b` implies `a` comes first.
    pub fn linear_extension(&self) -> &[ElementId] {
        &self.linear_extension
    }

    /// Length (in edges) of the longest chain from bottom to top.
    pub fn height(&self) -> usize {
        self.height
    }

    /// True when the order is total.
    pub fn is_chain(&self) -> bool {
        self.height + 1 == self.n
    }

    pub fn is_distributive(&self) -> bool {
        *self.distributive.get_or_init(|| {
            self.elements().all(|a| {
                self.elements().all(|b| {
                    self.elements().all(|c| {
                        self.join(a, self.meet(b, c)) == self.meet(self.join(a, b), self.join(a, c))
                    })
                })
            })
        })
    }

    pub fn is_modular(&self) -> bool {
        if self.distributive.get() == Some(&true) {
            return true;
        }
        *self.modular.get_or_init(|| {
            self.elements().all(|a| {
                self.up_set(a).into_iter().all(|b| {
                    self.elements()
                        .all(|c| self.join(a, self.meet(c, b)) == self.meet(self.join(a, c), b))
                })
            })
        })
    }

    /// Co-Heyting subtraction `c ⊖ a`: the least `b` with `a ⊔ b ⊒ c`.
    ///
    /// Computed as `⋀{ e | a ⊔ e ⊒ c }` and accepted only if that meet
    /// itself satisfies the condition. Entries are cached on first use.
    pub fn subtraction(&self, c: ElementId, a: ElementId) -> Result<ElementId> {
        let slot = &self.subtraction[c.index() * self.n + a.index()];
        match slot.load(Ordering::Relaxed) {
            UNSET => {}
            UNDEFINED => return Err(Error::NotDistributive),
            v => return Ok(ElementId(v)),
        }
        let candidate = self.big_meet(self.elements().filter(|&e| self.leq(c, self.join(a, e))));
        if self.leq(c, self.join(a, candidate)) {
            slot.store(candidate.0, Ordering::Relaxed);
            Ok(candidate)
        } else {
            slot.store(UNDEFINED, Ordering::Relaxed);
            Err(Error::NotDistributive)
        }
    }

    /// A view that counts every join, meet and subtraction performed through it.
    pub fn instrumented_view(&self) -> CountedLattice<'_> {
        CountedLattice::new(self)
    }
}

/// Reflexive-transitive closure of `edges` over `0..n`, returned as up-sets.
/// Fails if the closure identifies two distinct elements.
pub fn reflexive_transitive_closure(n: usize, edges: &[(usize, usize)]) -> Result<Vec<BitSet>> {
    let mut up = vec![BitSet::new(n); n];
    for (a, row) in up.iter_mut().enumerate() {
        row.insert(a);
    }
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidElement(a.max(b), n));
        }
        up[a].insert(b);
    }
    close_up_sets(&mut up);
    for a in 0..n {
        for b in up[a].iter() {
            if b != a && up[b].contains(a) {
                return Err(Error::AntisymmetryBroken {
                    a: a.into(),
                    b: b.into(),
                });
            }
        }
    }
    Ok(up)
}

/// Warshall closure on bit rows.
pub(crate) fn close_up_sets(up: &mut [BitSet]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn single_element_chain() {
        let l = Lattice::build(&LatticeSpec::Chain(1)).unwrap();
        assert_eq!(l.size(), 1);
        assert_eq!(l.bottom(), l.top());
        assert!(l.join_irreducibles().is_empty());
    }

    #[test]
    fn mn3_joins_of_middles_are_top() {
        let l = Lattice::build(&LatticeSpec::Mn(3)).unwrap();
        assert_eq!(l.size(), 5);
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    assert_eq!(l.join(e(a), e(b)), l.top());
                    assert_eq!(l.meet(e(a), e(b)), l.bottom());
                }
            }
        }
        assert_eq!(l.jdown(l.top()), vec![e(1), e(2), e(3)]);
        assert!(!l.is_distributive());
        assert!(l.is_modular());
    }

    #[test]
    fn empty_joins_and_meets() {
        let l = Lattice::build(&LatticeSpec::Powerset(2)).unwrap();
        assert_eq!(l.big_join([]), l.bottom());
        assert_eq!(l.big_meet([]), l.top());
        assert_eq!(l.meet(e(0b01), e(0b10)), e(0));
        assert_eq!(l.down_set(l.bottom()), vec![l.bottom()]);
    }

    #[test]
    fn powerset_jdown_is_atoms_below() {
        let l = Lattice::build(&LatticeSpec::Powerset(3)).unwrap();
        assert_eq!(l.jdown(e(0b011)), vec![e(0b001), e(0b010)]);
        assert!(l.is_distributive());
        assert_eq!(l.height(), 3);
    }

    #[test]
    fn pentagon_is_not_modular() {
        let l = Lattice::build(&LatticeSpec::Pentagon).unwrap();
        assert!(!l.is_modular());
        assert!(!l.is_distributive());
    }

    #[test]
    fn bottom_need_not_be_element_zero() {
        // 2 ⋖ 0 ⋖ 1
        let l = Lattice::from_cover_relation(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(l.bottom(), e(2));
        assert_eq!(l.top(), e(1));
        assert!(l.is_chain());
    }

    #[test]
    fn bowtie_is_rejected_with_offending_pair() {
        // two minimal and two maximal elements over a bottom and under a top,
        // with both minimal below both maximal
        let edges = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)];
        match Lattice::from_cover_relation(6, &edges) {
            Err(Error::NotALattice { a, b, .. }) => {
                let pair = [a.0.min(b.0), a.0.max(b.0)];
                assert!(pair == [1, 2] || pair == [3, 4], "{pair:?}");
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn cycle_is_rejected() {
        assert!(matches!(
            Lattice::from_cover_relation(2, &[(0, 1), (1, 0)]),
            Err(Error::AntisymmetryBroken { .. })
        ));
    }

    #[test]
    fn subtraction_examples() {
        let l = Lattice::build(&LatticeSpec::Powerset(3)).unwrap();
        for c in l.elements() {
            assert_eq!(l.subtraction(c, l.bottom()).unwrap(), c);
            assert_eq!(l.subtraction(c, c).unwrap(), l.bottom());
        }
        let chain = Lattice::build(&LatticeSpec::Chain(4)).unwrap();
        // every nonzero element of a chain is join-irreducible
        for a in 1..4 {
            for a2 in 0..a {
                assert_eq!(chain.subtraction(e(a), e(a2)).unwrap(), e(a));
            }
        }
    }

    #[test]
    fn subtraction_is_undefined_somewhere_in_m3() {
        let l = Lattice::build(&LatticeSpec::Mn(3)).unwrap();
        // least b with 1 ⊔ b ⊒ ⊤ does not exist: 2 and 3 both work, their meet is ⊥
        assert!(matches!(l.subtraction(l.top(), e(1)), Err(Error::NotDistributive)));
    }
}
