use std::cell::Cell;
use std::ops::{Add, AddAssign};

use super::{ElementId, Lattice};
use crate::error::Result;

/// Number of binary lattice operations performed, by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    pub joins: u64,
    pub meets: u64,
    pub subtractions: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.joins + self.meets + self.subtractions
    }
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts {
            joins: self.joins + o.joins,
            meets: self.meets + o.meets,
            subtractions: self.subtractions + o.subtractions,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

/// Borrowed view of a lattice whose `join`, `meet` and `subtraction`
/// increment private counters. Order tests (`leq`) are free.
///
/// Not `Sync`: each view belongs to one thread.
pub struct CountedLattice<'a> {
    lattice: &'a Lattice,
    counts: Cell<OpCounts>,
}

impl<'a> CountedLattice<'a> {
    pub fn new(lattice: &'a Lattice) -> Self {
        CountedLattice {
            lattice,
            counts: Cell::new(OpCounts::default()),
        }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn counts(&self) -> OpCounts {
        self.counts.get()
    }

    pub fn reset(&self) {
        self.counts.set(OpCounts::default());
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        let mut c = self.counts.get();
        c.joins += 1;
        self.counts.set(c);
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        let mut c = self.counts.get();
        c.meets += 1;
        self.counts.set(c);
        self.lattice.meet(a, b)
    }

    pub fn subtraction(&self, c: ElementId, a: ElementId) -> Result<ElementId> {
        let mut k = self.counts.get();
        k.subtractions += 1;
        self.counts.set(k);
        self.lattice.subtraction(c, a)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.lattice.leq(a, b)
    }
}
