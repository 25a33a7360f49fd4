use proptest::prelude::*;

use joinendo::endo::{is_join_endomorphism, is_monotone, pointwise_leq, random_join_endomorphism, Endofunction};
use joinendo::glb::{greatest_join_endomorphism_below, Algorithm};
use joinendo::latgen::{canonical_form, random_distributive_lattice, random_lattice, OrderRelation};
use joinendo::lattice::{ElementId, Lattice};
use joinendo::morphology::{dilation_as_endofunction, pixel_lattice, StructuringElement};

fn any_lattice() -> impl Strategy<Value = Lattice> {
    (1usize..=9, any::<u64>(), any::<bool>()).prop_map(|(n, seed, distributive)| {
        if distributive {
            random_distributive_lattice(n, seed).unwrap()
        } else {
            random_lattice(n, seed).unwrap()
        }
    })
}

fn ids(l: &Lattice) -> Vec<ElementId> {
    l.elements().collect()
}

/// Three pairwise incomparable elements with a common join and meet.
fn has_m3(l: &Lattice) -> bool {
    let e = ids(l);
    e.iter().any(|&a| {
        e.iter().any(|&b| {
            e.iter().any(|&c| {
                !l.comparable(a, b)
                    && !l.comparable(a, c)
                    && !l.comparable(b, c)
                    && l.join(a, b) == l.join(a, c)
                    && l.join(a, b) == l.join(b, c)
                    && l.meet(a, b) == l.meet(a, c)
                    && l.meet(a, b) == l.meet(b, c)
            })
        })
    })
}

/// `a < c` with `b` incomparable to both, `a ⊔ b = c ⊔ b` and `a ⊓ b = c ⊓ b`.
fn has_n5(l: &Lattice) -> bool {
    let e = ids(l);
    e.iter().any(|&a| {
        e.iter().any(|&c| {
            l.lt(a, c)
                && e.iter().any(|&b| {
                    !l.comparable(a, b)
                        && !l.comparable(c, b)
                        && l.join(a, b) == l.join(c, b)
                        && l.meet(a, b) == l.meet(c, b)
                })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_laws(l in any_lattice()) {
        let e = ids(&l);
        for &a in &e {
            prop_assert_eq!(l.join(a, a), a);
            prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
            for &b in &e {
                prop_assert_eq!(l.join(a, b), l.join(b, a));
                prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
                prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                for &c in &e {
                    prop_assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                    prop_assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                }
            }
        }
    }

    #[test]
    fn covers_and_irreducibles(l in any_lattice()) {
        for (a, b) in l.cover_edges() {
            prop_assert!(l.lt(a, b));
            prop_assert!(!ids(&l).into_iter().any(|x| l.lt(a, x) && l.lt(x, b)));
        }
        for a in l.elements() {
            let single_lower_cover = l.covers_of(a).len() == 1;
            prop_assert_eq!(l.is_join_irreducible(a), single_lower_cover);
        }
    }

    #[test]
    fn distributive_and_modular_flags(l in any_lattice()) {
        let n5 = has_n5(&l);
        prop_assert_eq!(l.is_modular(), !n5);
        prop_assert_eq!(l.is_distributive(), !n5 && !has_m3(&l));
    }

    #[test]
    fn subtraction_is_residual(n in 1usize..=10, seed in any::<u64>()) {
        let l = random_distributive_lattice(n, seed).unwrap();
        for c in l.elements() {
            for a in l.elements() {
                let d = l.subtraction(c, a).unwrap();
                for b in l.elements() {
                    prop_assert_eq!(l.leq(d, b), l.leq(c, l.join(a, b)));
                }
            }
        }
    }

    #[test]
    fn sampled_maps_are_join_endomorphisms(l in any_lattice(), seed in any::<u64>()) {
        let f = random_join_endomorphism(&l, seed).unwrap();
        prop_assert!(is_join_endomorphism(&l, &f));
        prop_assert!(is_monotone(&l, &f));
    }

    #[test]
    fn glb_is_greatest_lower_bound(l in any_lattice(), seeds in prop::collection::vec(any::<u64>(), 1..=4)) {
        let set: Vec<Endofunction> = seeds.iter().map(|&s| random_join_endomorphism(&l, s).unwrap()).collect();
        let glb = Algorithm::GMeetPlus.run(&l, &set).unwrap().result;
        prop_assert!(is_join_endomorphism(&l, &glb));
        for f in &set {
            prop_assert!(pointwise_leq(&l, &glb, f));
        }
        // any join-endomorphism below the whole set lies below the glb
        for (i, f) in set.iter().enumerate() {
            let lower = greatest_join_endomorphism_below(&l, f);
            let below_all = set.iter().all(|g| pointwise_leq(&l, &lower, g));
            if below_all {
                prop_assert!(pointwise_leq(&l, &lower, &glb), "member {}", i);
            }
        }
        for alg in Algorithm::ALL {
            if alg.applies_to(&l) && alg != Algorithm::BruteForce {
                prop_assert_eq!(&alg.run(&l, &set).unwrap().result, &glb, "{}", alg);
            }
        }
    }

    #[test]
    fn lowering_an_arbitrary_map(l in any_lattice(), values in prop::collection::vec(any::<usize>(), 9)) {
        let n = l.size();
        let f = Endofunction::from_indices(&l, &values[..n].iter().map(|v| v % n).collect::<Vec<_>>()).unwrap();
        let g = greatest_join_endomorphism_below(&l, &f);
        prop_assert!(is_join_endomorphism(&l, &g));
        prop_assert!(pointwise_leq(&l, &g, &f));
        if is_join_endomorphism(&l, &f) {
            prop_assert_eq!(g, f);
        }
    }

    #[test]
    fn canonical_form_ignores_labels(l in any_lattice(), shuffle in any::<u64>()) {
        let rel = OrderRelation::from_lattice(&l);
        let n = rel.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = shuffle;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&rel).0, canonical_form(&rel.relabel(&perm)).0);
    }

    #[test]
    fn dilations_are_join_endomorphisms(w in 1usize..=3, h in 1usize..=3, offsets in prop::collection::vec((-2i32..=2, -2i32..=2), 0..4)) {
        let l = pixel_lattice(w, h).unwrap();
        let f = dilation_as_endofunction(w, h, &StructuringElement::new(offsets), &l).unwrap();
        prop_assert!(is_join_endomorphism(&l, &f));
    }
}
