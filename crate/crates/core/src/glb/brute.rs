use super::{validate, Algorithm, MeetResult};
use crate::endo::{enumerate_join_endomorphisms_below, pointwise_meet_many, Endofunction};
use crate::error::Result;
use crate::lattice::Lattice;

/// Ground truth: the pointwise join of every join-endomorphism lying below
/// each member of `S`.
pub fn brute_force_meet(lattice: &Lattice, set: &[Endofunction], budget: u128) -> Result<MeetResult> {
    validate(lattice, set)?;
    let view = lattice.instrumented_view();
    // g ⊑ f for all f ∈ S  iff  g ⊑ the pointwise meet
    let bound = pointwise_meet_many(lattice, set)?;
    let mut values = vec![lattice.bottom(); lattice.size()];
    for g in enumerate_join_endomorphisms_below(lattice, &bound, budget)? {
        for (v, &x) in values.iter_mut().zip(g.values()) {
            *v = view.join(*v, x);
        }
    }
    Ok(MeetResult {
        result: Endofunction::from_values_unchecked(values),
        op_counts: view.counts(),
        algorithm: Algorithm::BruteForce,
        sigma_reductions: 0,
    })
}
