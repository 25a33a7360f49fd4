// Acceptance criteria, one pass/fail line each.

use std::panic::{self, AssertUnwindSafe};

use joinendo::counting::{
    construct_families, count_linear, count_mn, count_named, count_powerset, enumerate_non_reducing_mn,
    rook_poly_at_one,
};
use joinendo::endo::{
    enumerate_join_endomorphisms, is_join_endomorphism, random_join_endomorphism, Endofunction, DEFAULT_BUDGET,
};
use joinendo::glb::{
    brute_force_meet, gmeet_observed, gmeet_plus_observed, verify_01_relations_preserving, Algorithm, PairUniverse,
};
use joinendo::latgen::{
    conjecture_search, free_pairs, generate_all_lattices, labeled_lattice_oracle, random_distributive_lattice,
    random_lattice,
};
use joinendo::lattice::{ElementId, Lattice, LatticeSpec};
use joinendo::morphology::{meet_of_dilations_on, pixel_lattice, BinaryImage, StructuringElement};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn mn_counts() -> Outcome {
    for (n, expected) in [(1, 6u32), (2, 16), (3, 50), (4, 234)] {
        let r = count_mn(n).map_err(|e| e.to_string())?;
        ensure!(r.formula == expected.into(), "M_{n}: formula gave {}", r.formula);
        ensure!(r.enumerated == Some(expected as u64), "M_{n}: enumeration gave {:?}", r.enumerated);
    }
    Ok(())
}

fn powerset_and_chain_counts() -> Outcome {
    for (m, expected) in [(2u32, 16u64), (3, 512)] {
        let r = count_named(&LatticeSpec::Powerset(m as usize), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(r.enumerated == Some(expected), "powerset {m}: enumerated {:?}", r.enumerated);
        ensure!(count_powerset(m) == expected.into(), "powerset {m}: formula");
    }
    for (size, expected) in [(3usize, 6u64), (4, 20), (5, 70)] {
        let r = count_named(&LatticeSpec::Chain(size), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(r.enumerated == Some(expected), "chain {size}: enumerated {:?}", r.enumerated);
        ensure!(count_linear(size as u64 - 1) == expected.into(), "chain {size}: formula");
    }
    Ok(())
}

fn family_partition() -> Outcome {
    for n in 2..=4usize {
        let l = LatticeSpec::Mn(n).build().unwrap();
        let fam = construct_families(n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let sizes = fam.sizes();
        let r = rook_poly_at_one(n as u64);
        ensure!(
            sizes.f1 == 1 && sizes.f2 == n * n + n && sizes.f3 == n && r == sizes.f4.into(),
            "M_{n}: family sizes {sizes:?}"
        );
        let mut members: Vec<&Endofunction> = fam.all().collect();
        ensure!(members.iter().all(|f| is_join_endomorphism(&l, f)), "M_{n}: non-member in a family");
        let listed = members.len();
        members.sort();
        members.dedup();
        ensure!(members.len() == listed, "M_{n}: families overlap");
        let all = enumerate_join_endomorphisms(&l, DEFAULT_BUDGET).map_err(|e| e.to_string())?.count();
        ensure!(all == listed, "M_{n}: families cover {listed} of {all}");
    }
    Ok(())
}

fn non_reducing() -> Outcome {
    for (n, expected) in [(2, 7u64), (3, 34)] {
        let got = enumerate_non_reducing_mn(n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(got == expected, "M_{n}: {got} non-reducing, expected {expected}");
        ensure!(rook_poly_at_one(n as u64) == expected.into(), "M_{n}: rook polynomial");
    }
    Ok(())
}

fn powerset_op_counts() -> Outcome {
    for m in 4..=10usize {
        let l = LatticeSpec::Powerset(m).build().unwrap();
        let set = [random_join_endomorphism(&l, 1).unwrap(), random_join_endomorphism(&l, 2).unwrap()];
        let r = Algorithm::DMeetPlus.run(&l, &set).map_err(|e| e.to_string())?;
        let n = 1u64 << m;
        ensure!(r.op_counts.meets == m as u64, "size {n}: {} meets", r.op_counts.meets);
        ensure!(r.op_counts.joins == n - m as u64 - 1, "size {n}: {} joins", r.op_counts.joins);
    }
    Ok(())
}

/// Fixed-seed corpus of (lattice, set) cases: random lattices of sizes 1..=8,
/// half distributive, with 1..=4 random join-endomorphisms each.
fn corpus() -> Vec<(Lattice, Vec<Endofunction>)> {
    let mut cases = Vec::new();
    for seed in 0..30u64 {
        for n in 1..=8usize {
            let l = if seed % 2 == 0 {
                random_distributive_lattice(n, seed * 100 + n as u64).unwrap()
            } else {
                random_lattice(n, seed * 100 + n as u64).unwrap()
            };
            let m = 1 + (seed as usize + n) % 4;
            let set = (0..m as u64)
                .map(|k| random_join_endomorphism(&l, seed * 1000 + n as u64 * 10 + k).unwrap())
                .collect();
            cases.push((l, set));
        }
    }
    cases
}

fn oracle_equivalence() -> Outcome {
    let cases = corpus();
    ensure!(cases.len() >= 200, "only {} cases", cases.len());
    let mut compared = 0;
    for (i, (l, set)) in cases.iter().enumerate() {
        let expected = brute_force_meet(l, set, DEFAULT_BUDGET).map_err(|e| e.to_string())?.result;
        for alg in Algorithm::ALL {
            if alg == Algorithm::BruteForce || !alg.applies_to(l) {
                continue;
            }
            let got = alg.run(l, set).map_err(|e| format!("case {i} {alg}: {e}"))?.result;
            ensure!(got == expected, "case {i} {alg}: {got} vs oracle {expected}");
            compared += 1;
        }
    }
    ensure!(compared >= 200, "only {compared} comparisons");
    Ok(())
}

fn gmeet_invariants() -> Outcome {
    let mut updates = 0usize;
    for (i, (l, set)) in corpus().iter().enumerate() {
        let target = brute_force_meet(l, set, DEFAULT_BUDGET).map_err(|e| e.to_string())?.result;
        let bound = (l.size() * l.height()) as u64;
        let mut violations = Vec::new();
        let mut check = |before: &[ElementId], after: &[ElementId], label: &str| {
            let below = before.iter().zip(after).all(|(&b, &a)| l.leq(a, b));
            let strict = before != after;
            let above = after.iter().zip(target.values()).all(|(&a, &t)| l.leq(t, a));
            updates += 1;
            if !(below && strict && above) {
                violations.push(format!("case {i} {label}: below {below} strict {strict} above {above}"));
            }
        };
        let r = gmeet_observed(l, set, &mut |u| check(u.before, u.after, "gmeet")).map_err(|e| e.to_string())?;
        ensure!(r.sigma_reductions <= bound, "case {i} gmeet: {} reductions > {bound}", r.sigma_reductions);
        let mut states_ok = true;
        let r = gmeet_plus_observed(l, set, PairUniverse::AllPairs, &mut |u| {
            check(u.before, u.after, "gmeet+");
            if let Some(s) = u.state {
                states_ok &= s.check_invariants(l);
            }
        })
        .map_err(|e| e.to_string())?;
        ensure!(r.sigma_reductions <= bound, "case {i} gmeet+: {} reductions > {bound}", r.sigma_reductions);
        ensure!(states_ok, "case {i}: gmeet+ pair classification broken");
        ensure!(violations.is_empty(), "{}", violations.join("; "));
    }
    ensure!(updates > 100, "only {updates} observed updates");
    Ok(())
}

fn modular_equivalence() -> Outcome {
    let generated = generate_all_lattices(5).map_err(|e| e.to_string())?;
    let mut modular = 0;
    for n in 1..=5 {
        for l in generated.lattices(n).filter(Lattice::is_modular) {
            modular += 1;
            let mut values = vec![0usize; n];
            loop {
                let f = Endofunction::from_indices(&l, &values).unwrap();
                let fast = f.apply(l.bottom()) == l.bottom() && verify_01_relations_preserving(&l, &f);
                ensure!(fast == is_join_endomorphism(&l, &f), "size {n}: mismatch on {f}");
                let mut i = 0;
                while i < n && values[i] == n - 1 {
                    values[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                values[i] += 1;
            }
        }
    }
    // sizes 1..5 hold 1, 1, 1, 2, 4 modular lattices
    ensure!(modular == 9, "{modular} modular lattices");
    Ok(())
}

fn lattice_generation() -> Outcome {
    const PUBLISHED: [usize; 8] = [1, 1, 1, 2, 5, 15, 53, 222];
    let generated = generate_all_lattices(8).map_err(|e| e.to_string())?;
    for n in 1..=8 {
        ensure!(generated.of_size(n).len() == PUBLISHED[n - 1], "size {n}: {}", generated.of_size(n).len());
    }
    for n in 1..=5 {
        let oracle = labeled_lattice_oracle(n).len();
        ensure!(oracle == generated.of_size(n).len(), "size {n}: oracle {oracle}");
    }
    for n in 1..=8 {
        for rel in generated.of_size(n) {
            ensure!(rel.is_total() || !free_pairs(rel).is_empty(), "no free pair in {rel:?}");
        }
    }
    Ok(())
}

fn morphology() -> Outcome {
    let l = pixel_lattice(2, 2).map_err(|e| e.to_string())?;
    let catalog: Vec<StructuringElement> =
        StructuringElement::CATALOG.iter().map(|name| StructuringElement::named(name).unwrap()).collect();
    for mask in 0..16u64 {
        let image = BinaryImage::from_mask(2, 2, mask);
        for a in &catalog {
            for b in &catalog {
                let r = meet_of_dilations_on(&l, &image, &[a.clone(), b.clone()], Algorithm::GMeetPlus)
                    .map_err(|e| e.to_string())?;
                ensure!(r.agree(), "image {mask:04b}, {a:?} and {b:?}");
            }
        }
    }
    Ok(())
}

fn conjecture() -> Outcome {
    let first = conjecture_search(6, 2024).map_err(|e| e.to_string())?;
    let again = conjecture_search(6, 2024).map_err(|e| e.to_string())?;
    ensure!(format!("{first:?}") == format!("{again:?}"), "reports differ across reruns");
    if let Some(c) = &first.first {
        ensure!(c.reverified, "counterexample fails re-enumeration");
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("counting M_n", mn_counts),
        ("counting powerset and chain", powerset_and_chain_counts),
        ("family partition", family_partition),
        ("non-reducing maps", non_reducing),
        ("powerset op counts", powerset_op_counts),
        ("oracle equivalence", oracle_equivalence),
        ("gmeet invariants", gmeet_invariants),
        ("modular equivalence", modular_equivalence),
        ("lattice generation", lattice_generation),
        ("morphology", morphology),
        ("conjecture search", conjecture),
    ];
    let mut failed = Vec::new();
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn corpus_mixes_both_kinds() {
    let cases = corpus();
    assert!(cases.iter().any(|(l, _)| !l.is_distributive()));
    assert!(cases.iter().any(|(l, set)| set.len() == 4 && l.size() == 8));
}
