//! Closed-form sizes of `E(L)` for named lattice families, and an explicit
//! partition of `E(M_n)` into four families.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::endo::{count_join_endomorphisms, enumerate_join_endomorphisms, is_non_reducing, Endofunction};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeSpec};

/// `M_n` small enough to enumerate in [`count_mn`].
pub const MN_ENUMERATION_LIMIT: usize = 4;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of ways to place `k` non-attacking rooks on an `n × n` board.
pub fn rook_coefficient(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange {
            value: k as usize,
            expected: format!("0..={n}"),
        });
    }
    let b = binomial(n, k);
    Ok(&b * &b * factorial(k))
}

/// `R_n(1)`, the total number of rook placements on an `n × n` board.
pub fn rook_poly_at_one(n: u64) -> BigUint {
    (0..=n).map(|k| rook_coefficient(n, k).expect("k ≤ n")).sum()
}

/// `n! · L_n(-1)` for the Laguerre polynomial `L_n`, in exact integers.
pub fn laguerre_at_minus_one_times_factorial(n: u64) -> BigUint {
    // n!/k! = binom(n,k)·(n-k)!, then reindex k ↦ n-k
    rook_poly_at_one(n)
}

/// `|E(M_n)| = (n+1)² + n!·L_n(-1)`.
pub fn mn_formula(n: u64) -> BigUint {
    BigUint::from(n + 1).pow(2) + laguerre_at_minus_one_times_factorial(n)
}

/// `|E(2^m)| = k^{log₂ k}` with `k = 2^m`, i.e. `2^{m²}`.
pub fn count_powerset(m: u32) -> BigUint {
    BigUint::one() << (m as usize * m as usize)
}

/// `|E|` of the chain with `n + 1` elements: `binom(2n, n)`.
pub fn count_linear(n: u64) -> BigUint {
    binomial(2 * n, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySizes {
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub f4: usize,
}

impl FamilySizes {
    pub fn total(&self) -> usize {
        self.f1 + self.f2 + self.f3 + self.f4
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub lattice: String,
    pub size: usize,
    pub formula: BigUint,
    pub enumerated: Option<u64>,
    pub families: Option<FamilySizes>,
}

impl CountReport {
    pub const CSV_HEADER: &'static str = "lattice,n,formula,enumerated,f1,f2,f3,f4";

    /// Formula and enumeration agree whenever both are present.
    pub fn consistent(&self) -> bool {
        self.enumerated.is_none_or(|e| BigUint::from(e) == self.formula)
            && self
                .families
                .as_ref()
                .is_none_or(|f| BigUint::from(f.total()) == self.formula)
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let f = self.families.as_ref();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.lattice,
            self.size,
            self.formula,
            self.enumerated.map(|x| x.to_string()).unwrap_or_default(),
            opt(f.map(|f| f.f1)),
            opt(f.map(|f| f.f2)),
            opt(f.map(|f| f.f3)),
            opt(f.map(|f| f.f4)),
        )
    }
}

/// Formula for `|E(M_n)|`, plus enumeration and family sizes when
/// `n ≤ MN_ENUMERATION_LIMIT`.
pub fn count_mn(n: usize) -> Result<CountReport> {
    let spec = LatticeSpec::Mn(n);
    let mut report = CountReport {
        lattice: spec.label(),
        size: n + 2,
        formula: mn_formula(n as u64),
        enumerated: None,
        families: None,
    };
    if n <= MN_ENUMERATION_LIMIT {
        let l = spec.build()?;
        report.enumerated = Some(count_join_endomorphisms(&l, crate::endo::DEFAULT_BUDGET)?);
        let fam = construct_families(n, crate::endo::DEFAULT_BUDGET)?;
        report.families = Some(fam.sizes());
    }
    Ok(report)
}

/// Counts for `chain:K` and `powerset:M` lattices, enumerated when affordable.
pub fn count_named(spec: &LatticeSpec, budget: u128) -> Result<CountReport> {
    let formula = match spec {
        LatticeSpec::Mn(n) => return count_mn(*n),
        LatticeSpec::Chain(k) if *k > 0 => count_linear(*k as u64 - 1),
        LatticeSpec::Powerset(m) => count_powerset(*m as u32),
        other => {
            return Err(Error::Parse(format!(
                "no closed form for `{}`; use chain, powerset or mn",
                other.label()
            )))
        }
    };
    let l = spec.build()?;
    let enumerated = match count_join_endomorphisms(&l, budget) {
        Ok(c) => Some(c),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CountReport {
        lattice: spec.label(),
        size: l.size(),
        formula,
        enumerated,
        families: None,
    })
}

/// The four families partitioning `E(M_n)`.
///
/// Element ids follow [`LatticeSpec::Mn`]: `0` is ⊥, `1..=n` the middles,
/// `n + 1` is ⊤.
#[derive(Clone, Debug)]
pub struct MnFamilies {
    /// The constant ⊥ map.
    pub f1: Vec<Endofunction>,
    /// ⊤ ↦ a middle `e`; every middle goes to `e` except at most one, which goes to ⊥.
    pub f2: Vec<Endofunction>,
    /// ⊤ ↦ ⊤; one middle goes to ⊥ and the others to ⊤.
    pub f3: Vec<Endofunction>,
    /// ⊤ ↦ ⊤; each middle goes to ⊤ or to a middle, injectively on the latter.
    pub f4: Vec<Endofunction>,
}

impl MnFamilies {
    pub fn sizes(&self) -> FamilySizes {
        FamilySizes {
            f1: self.f1.len(),
            f2: self.f2.len(),
            f3: self.f3.len(),
            f4: self.f4.len(),
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &Endofunction> {
        self.f1.iter().chain(&self.f2).chain(&self.f3).chain(&self.f4)
    }
}

pub fn construct_families(n: usize, budget: u128) -> Result<MnFamilies> {
    let estimate = mn_formula(n as u64).to_u128().unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimated: estimate, budget });
    }
    let l = LatticeSpec::Mn(n).build()?;
    let bot = 0usize;
    let top = n + 1;
    let make = |vals: Vec<usize>| Endofunction::from_indices(&l, &vals).expect("ids in range");

    let f1 = vec![make(vec![bot; n + 2])];

    let mut f2 = Vec::new();
    for e in 1..=n {
        for dropped in 0..=n {
            // dropped == 0 means no middle goes to ⊥
            let mut v = vec![e; n + 2];
            v[bot] = bot;
            if dropped > 0 {
                v[dropped] = bot;
            }
            f2.push(make(v));
        }
    }

    let f3 = (1..=n)
        .map(|d| {
            let mut v = vec![top; n + 2];
            v[bot] = bot;
            v[d] = bot;
            make(v)
        })
        .collect();

    let mut f4 = Vec::new();
    let mut v = vec![bot; n + 2];
    v[top] = top;
    let mut used = vec![false; n + 1];
    place_rooks(1, n, top, &mut v, &mut used, &mut |v| f4.push(make(v.to_vec())));

    Ok(MnFamilies { f1, f2, f3, f4 })
}

/// Assigns middles `i..=n` either ⊤ or an unused middle.
fn place_rooks(
    i: usize,
    n: usize,
    top: usize,
    v: &mut [usize],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    if i > n {
        emit(v);
        return;
    }
    v[i] = top;
    place_rooks(i + 1, n, top, v, used, emit);
    for target in 1..=n {
        if !used[target] {
            used[target] = true;
            v[i] = target;
            place_rooks(i + 1, n, top, v, used, emit);
            used[target] = false;
        }
    }
}

/// `R_n(1)`: the number of non-reducing join-endomorphisms of `M_n`.
pub fn count_non_reducing_mn(n: usize) -> BigUint {
    rook_poly_at_one(n as u64)
}

/// Observed bounds on `|E(L)|` for a lattice of size `n`.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub size: usize,
    pub enumerated: u64,
    /// `n^{log₂ n}`
    pub lower: f64,
    /// `(n+1)² + n!·L_n(-1)`
    pub upper: BigUint,
    /// `|E|` of the chain of the same size, reported for distributive lattices.
    pub distributive_upper: Option<BigUint>,
}

impl BoundsReport {
    pub fn within(&self) -> bool {
        let e = self.enumerated as f64;
        e + 1e-9 * e.max(1.0) >= self.lower
            && BigUint::from(self.enumerated) <= self.upper
            && self
                .distributive_upper
                .as_ref()
                .is_none_or(|u| BigUint::from(self.enumerated) <= *u)
    }
}

pub fn bounds_check(lattice: &Lattice, budget: u128) -> Result<BoundsReport> {
    let n = lattice.size();
    let enumerated = count_join_endomorphisms(lattice, budget)?;
    let nf = n as f64;
    Ok(BoundsReport {
        size: n,
        enumerated,
        lower: nf.powf(nf.log2()),
        upper: mn_formula(n as u64),
        distributive_upper: lattice
            .is_distributive()
            .then(|| count_linear(n.saturating_sub(1) as u64)),
    })
}

/// Non-reducing join-endomorphisms of `M_n`, by enumeration.
pub fn enumerate_non_reducing_mn(n: usize, budget: u128) -> Result<u64> {
    let l = LatticeSpec::Mn(n).build()?;
    let it = enumerate_join_endomorphisms(&l, budget)?;
    Ok(it.filter(|f| is_non_reducing(&l, f)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{is_join_endomorphism, DEFAULT_BUDGET};
    use std::collections::HashSet;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// `n! · Σ_k binom(n,k) / k!` evaluated directly as a rational sum.
    fn laguerre_direct(n: u64) -> BigUint {
        let nf = factorial(n);
        (0..=n).map(|k| binomial(n, k) * &nf / factorial(k)).sum()
    }

    #[test]
    fn laguerre_values() {
        let got: Vec<_> = (0..5).map(laguerre_at_minus_one_times_factorial).collect();
        assert_eq!(got, [1u64, 2, 7, 34, 209].map(big));
        for n in 0..=20 {
            assert_eq!(laguerre_at_minus_one_times_factorial(n), laguerre_direct(n), "n = {n}");
        }
        // beyond u64 at n = 20
        assert!(laguerre_at_minus_one_times_factorial(20) > big(u64::MAX / 1000));
    }

    #[test]
    fn rook_coefficients() {
        for n in 0..8 {
            assert_eq!(rook_coefficient(n, 0).unwrap(), big(1));
            if n > 0 {
                assert_eq!(rook_coefficient(n, 1).unwrap(), big(n * n));
            }
            assert_eq!(rook_coefficient(n, n).unwrap(), factorial(n));
        }
        assert_eq!(rook_poly_at_one(3), big(34));
        assert!(matches!(rook_coefficient(2, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn mn_formula_matches_enumeration() {
        for (n, expected) in [(0, 2u64), (1, 6), (2, 16), (3, 50), (4, 234)] {
            let r = count_mn(n).unwrap();
            assert_eq!(r.formula, big(expected));
            assert_eq!(r.enumerated, Some(expected));
            assert!(r.consistent());
        }
        assert_eq!(count_mn(3).unwrap().csv_row(), "M_3,5,50,50,1,12,3,34");
        assert_eq!(count_mn(7).unwrap().enumerated, None);
    }

    #[test]
    fn powerset_and_chain_counts() {
        assert_eq!(count_powerset(2), big(16));
        assert_eq!(count_powerset(3), big(512));
        for m in 0..=3 {
            let l = LatticeSpec::Powerset(m).build().unwrap();
            assert_eq!(big(count_join_endomorphisms(&l, DEFAULT_BUDGET).unwrap()), count_powerset(m as u32));
        }
        assert_eq!(count_linear(3), big(20));
        // chain of size k has binom(2(k-1), k-1) join-endomorphisms
        for k in 1..=6 {
            let l = LatticeSpec::Chain(k).build().unwrap();
            assert_eq!(
                big(count_join_endomorphisms(&l, DEFAULT_BUDGET).unwrap()),
                count_linear(k as u64 - 1),
                "chain of size {k}"
            );
        }
    }

    #[test]
    fn families_partition_enumeration() {
        for (n, sizes) in [(0, (1, 0, 0, 1)), (1, (1, 2, 1, 2)), (2, (1, 6, 2, 7)), (3, (1, 12, 3, 34)), (4, (1, 20, 4, 209))] {
            let l = LatticeSpec::Mn(n).build().unwrap();
            let fam = construct_families(n, DEFAULT_BUDGET).unwrap();
            let s = fam.sizes();
            assert_eq!((s.f1, s.f2, s.f3, s.f4), sizes, "n = {n}");
            let mut seen = HashSet::new();
            for f in fam.all() {
                assert!(is_join_endomorphism(&l, f));
                assert!(seen.insert(f.clone()), "families overlap at {f}");
            }
            let all: HashSet<_> = enumerate_join_endomorphisms(&l, DEFAULT_BUDGET).unwrap().collect();
            assert_eq!(seen, all);
            for f in &fam.f4 {
                assert!(is_non_reducing(&l, f));
            }
        }
    }

    #[test]
    fn families_respect_budget() {
        assert!(matches!(construct_families(6, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn non_reducing_counts() {
        for n in 0..=4 {
            assert_eq!(big(enumerate_non_reducing_mn(n, DEFAULT_BUDGET).unwrap()), count_non_reducing_mn(n));
        }
        assert_eq!(count_non_reducing_mn(0), big(1));
        assert_eq!(count_non_reducing_mn(2), big(7));
    }

    #[test]
    fn bounds_on_small_lattices() {
        let b = bounds_check(&LatticeSpec::Powerset(2).build().unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(b.enumerated, 16);
        assert!((b.lower - 16.0).abs() < 1e-9);
        assert_eq!(b.upper, big(234));
        assert!(b.within());
        let b = bounds_check(&LatticeSpec::Chain(4).build().unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(b.enumerated, 20);
        assert_eq!(b.distributive_upper, Some(big(20)));
        assert!(b.within());
    }
}
