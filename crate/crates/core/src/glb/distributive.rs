//! Algorithms that need a distributive lattice.

use super::{validate, Algorithm, MeetResult};
use crate::endo::Endofunction;
use crate::error::{Error, Result};
use crate::lattice::{CountedLattice, ElementId, Lattice};

fn fold_pairwise(
    lattice: &Lattice,
    set: &[Endofunction],
    algorithm: Algorithm,
    step: impl Fn(&CountedLattice<'_>, &Endofunction, &Endofunction) -> Result<Vec<ElementId>>,
) -> Result<MeetResult> {
    validate(lattice, set)?;
    if !lattice.is_distributive() {
        return Err(Error::NotDistributive);
    }
    if set.len() == 1 {
        return Ok(MeetResult::unchanged(&set[0], algorithm));
    }
    let view = lattice.instrumented_view();
    let mut acc = set[0].clone();
    for g in &set[1..] {
        acc = Endofunction::from_values_unchecked(step(&view, &acc, g)?);
    }
    Ok(MeetResult {
        result: acc,
        op_counts: view.counts(),
        algorithm,
        sigma_reductions: 0,
    })
}

/// `h(c) = ⋀{ f(a) ⊔ g(b) | a ⊔ b ⊒ c }` over all pairs; O(mn³) operations.
pub fn a1_naive(lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
    fold_pairwise(lattice, set, Algorithm::A1, |view, f, g| {
        let l = view.lattice();
        Ok(l.elements()
            .map(|c| {
                let mut acc = l.top();
                for a in l.elements() {
                    for b in l.elements() {
                        if l.leq(c, view.join(a, b)) {
                            acc = view.meet(acc, view.join(f.apply(a), g.apply(b)));
                        }
                    }
                }
                acc
            })
            .collect())
    })
}

/// `h(c) = ⋀{ f(a) ⊔ g(c ⊖ a) | a ∈ ↓c }`; O(mn²) operations.
pub fn dmeet(lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
    fold_pairwise(lattice, set, Algorithm::DMeet, |view, f, g| {
        let l = view.lattice();
        l.elements()
            .map(|c| {
                let mut acc = l.top();
                for a in l.down_set(c) {
                    let x = view.join(f.apply(a), g.apply(view.subtraction(c, a)?));
                    acc = view.meet(acc, x);
                }
                Ok(acc)
            })
            .collect()
    })
}

/// Join-irreducible characterisation: `h(a) = f(a) ⊓ g(a)` on `J(L)`,
/// `h(⊥) = ⊥`, and `h(a) = h(b) ⊔ h(c)` for the two smallest-index
/// distinct elements covered by any other `a`. Exactly `|J(L)|` meets and
/// `n - |J(L)| - 1` joins per fold.
pub fn dmeet_plus(lattice: &Lattice, set: &[Endofunction]) -> Result<MeetResult> {
    fold_pairwise(lattice, set, Algorithm::DMeetPlus, |view, f, g| {
        let l = view.lattice();
        let mut h = vec![l.bottom(); l.size()];
        for &a in l.join_irreducibles() {
            h[a.index()] = view.meet(f.apply(a), g.apply(a));
        }
        // linear-extension order computes every cover before the element above it
        for &a in l.linear_extension() {
            if a == l.bottom() || l.is_join_irreducible(a) {
                continue;
            }
            match l.covers_of(a) {
                [b, c, ..] => h[a.index()] = view.join(h[b.index()], h[c.index()]),
                _ => {
                    return Err(Error::Structure(format!(
                        "reducible element {a} covers fewer than two elements"
                    )))
                }
            }
        }
        Ok(h)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{random_join_endomorphism, DEFAULT_BUDGET};
    use crate::glb::brute_force_meet;
    use crate::lattice::{LatticeSpec, OpCounts};

    fn swap_pair(l: &Lattice) -> Vec<Endofunction> {
        vec![
            Endofunction::from_indices(l, &[0, 2, 1, 3]).unwrap(),
            Endofunction::from_indices(l, &[0, 3, 2, 3]).unwrap(),
        ]
    }

    #[test]
    fn swap_pair_on_m2_all_three() {
        let l = LatticeSpec::Mn(2).build().unwrap();
        let expected = Endofunction::from_indices(&l, &[0, 2, 0, 2]).unwrap();
        for alg in [a1_naive, dmeet, dmeet_plus] {
            assert_eq!(alg(&l, &swap_pair(&l)).unwrap().result, expected);
        }
    }

    #[test]
    fn singletons_and_duplicates() {
        let l = LatticeSpec::Powerset(3).build().unwrap();
        let f = random_join_endomorphism(&l, 7).unwrap();
        for alg in [a1_naive, dmeet, dmeet_plus] {
            let r = alg(&l, std::slice::from_ref(&f)).unwrap();
            assert_eq!(r.result, f);
            assert_eq!(r.op_counts, OpCounts::default());
            assert_eq!(alg(&l, &[f.clone(), f.clone()]).unwrap().result, f);
        }
    }

    #[test]
    fn non_distributive_is_rejected() {
        let l = LatticeSpec::Mn(3).build().unwrap();
        let id = Endofunction::identity(&l);
        for alg in [a1_naive, dmeet, dmeet_plus] {
            assert!(matches!(alg(&l, &[id.clone(), id.clone()]), Err(Error::NotDistributive)));
        }
    }

    #[test]
    fn op_counts_for_powerset_16_and_32() {
        for (m, joins, meets) in [(4, 11, 4), (5, 26, 5)] {
            let l = LatticeSpec::Powerset(m).build().unwrap();
            let set = [random_join_endomorphism(&l, 1).unwrap(), random_join_endomorphism(&l, 2).unwrap()];
            let r = dmeet_plus(&l, &set).unwrap();
            assert_eq!((r.op_counts.joins, r.op_counts.meets), (joins, meets));
        }
    }

    #[test]
    fn dmeet_counts_on_powerset_16() {
        // Σ_c |↓c| = 3^4 joins, meets and subtractions
        let l = LatticeSpec::Powerset(4).build().unwrap();
        let set = [random_join_endomorphism(&l, 3).unwrap(), random_join_endomorphism(&l, 4).unwrap()];
        let r = dmeet(&l, &set).unwrap();
        assert_eq!(r.op_counts.joins, 81);
        assert_eq!(r.op_counts.meets, 81);
        assert_eq!(r.op_counts.subtractions, 81);
        assert_eq!(r.result, dmeet_plus(&l, &set).unwrap().result);
    }

    #[test]
    fn agrees_with_oracle_on_small_distributive_lattices() {
        for spec in ["chain:4", "powerset:2", "chain:2*chain:3", "powerset:3"] {
            let l: Lattice = spec.parse::<LatticeSpec>().unwrap().build().unwrap();
            for seed in 0..5u64 {
                let set: Vec<_> = (0..3).map(|k| random_join_endomorphism(&l, seed * 10 + k).unwrap()).collect();
                let truth = brute_force_meet(&l, &set, DEFAULT_BUDGET).unwrap().result;
                for alg in [a1_naive, dmeet, dmeet_plus] {
                    assert_eq!(alg(&l, &set).unwrap().result, truth, "{spec} seed {seed}");
                }
            }
        }
    }
}
