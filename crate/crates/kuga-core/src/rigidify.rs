//! Reduction of non-rigid primary candidates to rigid ones.
//!
//! A summand that is trivial on every noncompact embedding blocks the
//! form construction.  The cure is to enlarge the group by a fresh
//! rank-one factor split at exactly one new place, tensor each Galois
//! conjugate of the offending summand with the matching leg of the new
//! factor, and repeat.  Each round makes the identity conjugate act on
//! a noncompact place while leaving every already-rigid conjugate
//! rigid, so the rigidity index strictly increases and the loop stops
//! after at most `|𝒢|` rounds.
//!
//! The new factor is bookkept purely through its archimedean data: one
//! embedding per Galois element, split signature at the identity slot
//! and compact signature elsewhere, with the Galois generators acting
//! on the new slots by left translation.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::satake::{kind_for_slot, Candidate, Content, Leg, SatakeError, Summand};
use crate::spec::perm::Perm;
use crate::spec::{
    BuildOptions, EmbIdx, GroupSpec, RawFactor, RawSig, SatakeType, SpecError,
    DEFAULT_GROUP_BOUND,
};

/// A summand blocking rigidity, together with an embedding where it
/// acts (necessarily compact, since the summand is trivial at every
/// noncompact embedding).
#[derive(Clone, Debug)]
pub struct Witness {
    pub summand: Summand,
    pub alpha0: EmbIdx,
}

/// One augmentation round, recorded with pre-augmentation keys and
/// labels so the trail stays readable after the spec has grown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentationStep {
    /// Key of the chosen summand in the spec it was found in.
    pub summand: String,
    /// Label of the embedding where that summand acts.
    pub alpha0: String,
    /// Name of the factor added by this round.
    pub new_factor: String,
    pub before_index: usize,
    pub after_index: usize,
}

/// Result of a single augmentation round.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub spec: GroupSpec,
    pub candidate: Candidate,
    pub factor_name: String,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RigidifyError {
    #[error("witness is stale: summand `{summand}` is not part of the candidate")]
    StaleWitness { summand: String },
    #[error("augmented group failed to rebuild: {0}")]
    Rebuild(#[from] SpecError),
    #[error("augmentation slot {label} admits no leg: {reason}")]
    BadSlot { label: String, reason: String },
    #[error("rigidity index did not increase: {before} → {after}")]
    NoProgress { before: usize, after: usize },
    #[error("augmented candidate lost an invariant: {reason}")]
    AugmentationBroken { reason: String },
    #[error(transparent)]
    Satake(#[from] SatakeError),
}

/// Find a summand trivial on every noncompact embedding, or `None` if
/// the candidate is rigid.  Summands are scanned in canonical key
/// order and the least embedding label in the support is chosen, so
/// repeated runs take identical trails.
pub fn find_nonrigid_witness(candidate: &Candidate, spec: &GroupSpec) -> Option<Witness> {
    for (s, _) in candidate.summands() {
        if s.is_trivial() || !s.noncompact_support(spec).is_empty() {
            continue;
        }
        // Legs are kept sorted by embedding index, and embeddings are
        // globally ordered by label, so the first leg has the least label.
        let alpha0 = s.legs().first()?.emb;
        return Some(Witness {
            summand: s.clone(),
            alpha0,
        });
    }
    None
}

/// Smallest unused name for the new factor, with one slot label per
/// Galois element.
fn fresh_factor_names(spec: &GroupSpec, order: usize) -> (String, Vec<String>) {
    'next: for k in 1usize.. {
        let name = format!("Q{k}");
        if spec.factors().iter().any(|f| f.name == name) {
            continue;
        }
        let labels: Vec<String> = (0..order).map(|i| format!("q{k}_g{i}")).collect();
        for l in &labels {
            if spec.find_emb(l).is_some() {
                continue 'next;
            }
        }
        return (name, labels);
    }
    unreachable!("name space is unbounded")
}

/// One augmentation round: add a fresh rank-one factor, split at the
/// identity slot and compact at every other slot, and replace the
/// candidate by the orbit of `witness ⊗ (new-factor leg)`.
pub fn augment(
    candidate: &Candidate,
    spec: &GroupSpec,
    witness: &Witness,
) -> Result<Augmented, RigidifyError> {
    let stale = || RigidifyError::StaleWitness {
        summand: witness.summand.key(spec),
    };
    if !candidate
        .summands()
        .iter()
        .any(|(s, _)| s == &witness.summand)
    {
        return Err(stale());
    }
    if !witness
        .summand
        .legs()
        .iter()
        .any(|l| l.emb == witness.alpha0)
    {
        return Err(stale());
    }

    let elements: Vec<Perm> = spec.galois().elements().to_vec();
    let order = elements.len();
    let (factor_name, labels) = fresh_factor_names(spec, order);

    // The identity slot is the split place; all other slots are compact.
    let mut sigs = BTreeMap::new();
    for (i, lbl) in labels.iter().enumerate() {
        let sig = if i == 0 {
            RawSig::Pair(1, 1)
        } else {
            RawSig::Pair(2, 0)
        };
        sigs.insert(lbl.clone(), sig);
    }
    let mut raw = spec.to_raw();
    raw.factors.push(RawFactor {
        name: factor_name.clone(),
        satake_type: SatakeType::I,
        n: 2,
        embeddings: labels.clone(),
        sigs,
    });

    // Extend each generator by left translation on the new slots: the
    // slot of σ goes to the slot of g∘σ.
    let elem_index = |p: &Perm| {
        elements
            .iter()
            .position(|e| e == p)
            .expect("group is closed under composition")
    };
    for (g, cycles) in spec.galois().generators().iter().zip(&mut raw.generators) {
        let images: Vec<usize> = elements
            .iter()
            .map(|sigma| elem_index(&g.compose(sigma)))
            .collect();
        let slot_perm = Perm::from_images(images).expect("left translation is a bijection");
        for cycle in slot_perm.cycles() {
            cycles.push(cycle.into_iter().map(|i| labels[i].clone()).collect());
        }
    }

    let new_spec = raw.build_with(BuildOptions {
        group_bound: order.max(DEFAULT_GROUP_BOUND),
    })?;
    if new_spec.galois().order() != order {
        return Err(RigidifyError::AugmentationBroken {
            reason: format!(
                "group order changed from {order} to {}",
                new_spec.galois().order()
            ),
        });
    }

    // Replace the candidate by the orbit {witness^σ ⊗ leg(slot of σ)}.
    // Conjugates are formed in the old spec and carried over by label,
    // since augmentation renumbers embeddings but keeps every label.
    let mult = candidate.summands()[0].1;
    let mut parts = Vec::with_capacity(order);
    for (i, sigma) in elements.iter().enumerate() {
        let conj = witness.summand.conjugate(spec, sigma)?;
        let mut legs = Vec::with_capacity(conj.legs().len() + 1);
        for l in conj.legs() {
            let emb = new_spec
                .find_emb(spec.label(l.emb))
                .expect("old labels survive augmentation");
            legs.push(Leg { emb, kind: l.kind });
        }
        let q_emb = new_spec
            .find_emb(&labels[i])
            .expect("new labels were just added");
        let q_kind = kind_for_slot(
            Content::Wedge(1),
            new_spec.factor_of(q_emb),
            new_spec.sig(q_emb),
        )
        .map_err(|reason| RigidifyError::BadSlot {
            label: labels[i].clone(),
            reason,
        })?;
        legs.push(Leg {
            emb: q_emb,
            kind: q_kind,
        });
        parts.push((Summand::new(legs), mult));
    }
    let new_candidate = Candidate::new(&new_spec, parts);

    for (check, name) in [
        (new_candidate.is_stable(&new_spec), "stability"),
        (new_candidate.is_galois_stable(&new_spec), "Galois stability"),
        (new_candidate.is_primary(&new_spec), "primality"),
    ] {
        if !check {
            return Err(RigidifyError::AugmentationBroken {
                reason: format!("augmented candidate fails {name}"),
            });
        }
    }

    Ok(Augmented {
        spec: new_spec,
        candidate: new_candidate,
        factor_name,
    })
}

/// Augment until rigid.  Returns the final spec and candidate with one
/// trail entry per round; an already-rigid input yields an empty trail.
pub fn rigidify(
    candidate: &Candidate,
    spec: &GroupSpec,
) -> Result<(GroupSpec, Candidate, Vec<AugmentationStep>), RigidifyError> {
    candidate.check_stability(spec)?;
    let mut index = candidate.rigidity_index(spec)?;
    let order = spec.galois().order();
    let mut cur_spec = spec.clone();
    let mut cur = candidate.clone();
    let mut trail = Vec::new();

    while let Some(witness) = find_nonrigid_witness(&cur, &cur_spec) {
        let summand = witness.summand.key(&cur_spec);
        let alpha0 = cur_spec.label(witness.alpha0).to_string();
        let augmented = augment(&cur, &cur_spec, &witness)?;
        let after = augmented.candidate.rigidity_index(&augmented.spec)?;
        if after <= index {
            return Err(RigidifyError::NoProgress {
                before: index,
                after,
            });
        }
        trail.push(AugmentationStep {
            summand,
            alpha0,
            new_factor: augmented.factor_name,
            before_index: index,
            after_index: after,
        });
        index = after;
        cur_spec = augmented.spec;
        cur = augmented.candidate;
        if trail.len() > order {
            return Err(RigidifyError::AugmentationBroken {
                reason: format!("trail exceeded the group order {order}"),
            });
        }
    }
    Ok((cur_spec, cur, trail))
}

/// The candidate's summand multiset after removing every leg that
/// lives on one of the named factors, as sorted (key, multiplicity)
/// pairs.  A summand whose legs are all removed collapses to `triv`.
pub fn erase_factors(
    candidate: &Candidate,
    spec: &GroupSpec,
    factor_names: &[String],
) -> Vec<(String, u32)> {
    let mut out: BTreeMap<String, u32> = BTreeMap::new();
    for (s, m) in candidate.summands() {
        let kept: Vec<Leg> = s
            .legs()
            .iter()
            .filter(|l| !factor_names.contains(&spec.factor_of(l.emb).name))
            .copied()
            .collect();
        *out.entry(Summand::new(kept).key(spec)).or_insert(0) += m;
    }
    out.into_iter().collect()
}

/// The candidate's summand multiset as sorted (key, multiplicity) pairs.
pub fn summand_multiset(candidate: &Candidate, spec: &GroupSpec) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = candidate
        .summands()
        .iter()
        .map(|(s, m)| (s.key(spec), *m))
        .collect();
    out.sort();
    out
}

/// If `left` is `right` scaled by one constant multiplicity, return
/// that constant.  Both inputs are sorted (key, multiplicity) pairs.
pub fn uniform_multiple(left: &[(String, u32)], right: &[(String, u32)]) -> Option<u32> {
    if left.len() != right.len() || left.is_empty() {
        return None;
    }
    let mut ratio = None;
    for ((lk, lm), (rk, rm)) in left.iter().zip(right) {
        if lk != rk || *rm == 0 || lm % rm != 0 {
            return None;
        }
        let r = lm / rm;
        if *ratio.get_or_insert(r) != r {
            return None;
        }
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::RawSpec;

    fn factor(
        name: &str,
        n: u32,
        slots: &[(&str, Option<(u32, u32)>)],
    ) -> RawFactor {
        let mut sigs = BTreeMap::new();
        for (lbl, sig) in slots {
            if let Some((p, q)) = sig {
                sigs.insert(lbl.to_string(), RawSig::Pair(*p, *q));
            }
        }
        RawFactor {
            name: name.into(),
            satake_type: SatakeType::I,
            n,
            embeddings: slots.iter().map(|(l, _)| l.to_string()).collect(),
            sigs,
        }
    }

    /// One unitary factor over a quadratic field: split signature at
    /// `a1`, compact at `a2`, Galois swapping the two.
    fn quadratic_spec() -> GroupSpec {
        RawSpec {
            factors: vec![factor(
                "A",
                3,
                &[("a1", Some((2, 1))), ("a2", Some((3, 0)))],
            )],
            generators: vec![vec![vec!["a1".into(), "a2".into()]]],
        }
        .build()
        .unwrap()
    }

    fn wedge_summand(spec: &GroupSpec, label: &str) -> Summand {
        let emb = spec.find_emb(label).unwrap();
        let kind =
            kind_for_slot(Content::Wedge(1), spec.factor_of(emb), spec.sig(emb)).unwrap();
        Summand::new(vec![Leg { emb, kind }])
    }

    /// Orbit of the wedge summand at `label` as a candidate.
    fn orbit_candidate(spec: &GroupSpec, label: &str) -> Candidate {
        let base = wedge_summand(spec, label);
        let parts = spec
            .galois()
            .elements()
            .iter()
            .map(|s| (base.conjugate(spec, s).unwrap(), 1))
            .collect();
        Candidate::new(spec, parts)
    }

    #[test]
    fn rigid_candidate_has_no_witness_and_an_empty_trail() {
        let spec = quadratic_spec();
        // One summand with a leg at both embeddings: Galois fixes it and
        // it acts at exactly one noncompact place.
        let e1 = spec.find_emb("a1").unwrap();
        let e2 = spec.find_emb("a2").unwrap();
        let k1 = kind_for_slot(Content::Wedge(1), spec.factor_of(e1), spec.sig(e1)).unwrap();
        let k2 = kind_for_slot(Content::Wedge(1), spec.factor_of(e2), spec.sig(e2)).unwrap();
        let s = Summand::new(vec![Leg { emb: e1, kind: k1 }, Leg { emb: e2, kind: k2 }]);
        let cand = Candidate::new(&spec, vec![(s, 1)]);
        assert!(cand.is_rigid(&spec));
        assert!(find_nonrigid_witness(&cand, &spec).is_none());

        let (fspec, fcand, trail) = rigidify(&cand, &spec).unwrap();
        assert!(trail.is_empty());
        assert_eq!(fcand.key(&fspec), cand.key(&spec));
    }

    #[test]
    fn witness_names_the_compact_summand_and_its_least_label() {
        let spec = quadratic_spec();
        let cand = orbit_candidate(&spec, "a1");
        assert!(!cand.is_rigid(&spec));
        let w = find_nonrigid_witness(&cand, &spec).unwrap();
        assert_eq!(w.summand.key(&spec), "A:a2:cwedge(1)");
        assert_eq!(spec.label(w.alpha0), "a2");
    }

    #[test]
    fn one_round_over_a_quadratic_field_reaches_index_two() {
        let spec = quadratic_spec();
        let cand = orbit_candidate(&spec, "a1");
        assert_eq!(cand.rigidity_index(&spec).unwrap(), 1);

        let w = find_nonrigid_witness(&cand, &spec).unwrap();
        let out = augment(&cand, &spec, &w).unwrap();
        assert_eq!(out.factor_name, "Q1");
        assert_eq!(out.spec.galois().order(), 2);

        // Two summands, each with a two-leg support.
        assert_eq!(out.candidate.summands().len(), 2);
        for (s, m) in out.candidate.summands() {
            assert_eq!(s.legs().len(), 2);
            assert_eq!(*m, 1);
        }
        assert!(out.candidate.is_rigid(&out.spec));
        assert_eq!(out.candidate.rigidity_index(&out.spec).unwrap(), 2);

        // The split slot carries the middle wedge; the other slot is
        // compact.
        let q0 = out.spec.find_emb("q1_g0").unwrap();
        let q1 = out.spec.find_emb("q1_g1").unwrap();
        assert!(out.spec.is_noncompact(q0));
        assert!(!out.spec.is_noncompact(q1));

        // Erasing the new factor restores the original multiset.
        let erased = erase_factors(&out.candidate, &out.spec, &["Q1".into()]);
        let original = summand_multiset(&cand, &spec);
        assert_eq!(uniform_multiple(&erased, &original), Some(1));
    }

    #[test]
    fn stabilized_witness_doubles_the_recovered_multiplicity() {
        // Klein group: one generator swaps the A-slots, the other the
        // B-slots.  The compact wedge at a2 is fixed by the second
        // generator, so its orbit has two members over a group of four,
        // and erasing the augmentation factors recovers the original
        // multiset twice over.
        let spec = RawSpec {
            factors: vec![
                factor("A", 3, &[("a1", Some((2, 1))), ("a2", Some((3, 0)))]),
                factor("B", 3, &[("b1", Some((2, 1))), ("b2", Some((3, 0)))]),
            ],
            generators: vec![
                vec![vec!["a1".into(), "a2".into()]],
                vec![vec!["b1".into(), "b2".into()]],
            ],
        }
        .build()
        .unwrap();
        assert_eq!(spec.galois().order(), 4);

        let cand = orbit_candidate(&spec, "a2");
        assert_eq!(cand.summands().len(), 2);
        assert_eq!(cand.rigidity_index(&spec).unwrap(), 2);

        let (fspec, fcand, trail) = rigidify(&cand, &spec).unwrap();
        let indices: Vec<(usize, usize)> = trail
            .iter()
            .map(|s| (s.before_index, s.after_index))
            .collect();
        assert_eq!(indices, vec![(2, 3), (3, 4)]);
        assert!(fcand.is_rigid(&fspec));
        assert_eq!(fcand.summands().len(), 4);

        let names: Vec<String> = trail.iter().map(|s| s.new_factor.clone()).collect();
        let erased = erase_factors(&fcand, &fspec, &names);
        let original = summand_multiset(&cand, &spec);
        assert_eq!(uniform_multiple(&erased, &original), Some(2));
    }

    #[test]
    fn cyclic_four_fixture_climbs_two_to_three_to_four() {
        let spec = RawSpec {
            factors: vec![factor(
                "A",
                3,
                &[
                    ("a1", Some((2, 1))),
                    ("a2", Some((3, 0))),
                    ("a3", Some((2, 1))),
                    ("a4", Some((3, 0))),
                ],
            )],
            generators: vec![vec![vec![
                "a1".into(),
                "a2".into(),
                "a3".into(),
                "a4".into(),
            ]]],
        }
        .build()
        .unwrap();
        assert_eq!(spec.galois().order(), 4);

        let cand = orbit_candidate(&spec, "a1");
        assert_eq!(cand.summands().len(), 4);
        assert_eq!(cand.rigidity_index(&spec).unwrap(), 2);

        let (fspec, fcand, trail) = rigidify(&cand, &spec).unwrap();
        let indices: Vec<(usize, usize)> = trail
            .iter()
            .map(|s| (s.before_index, s.after_index))
            .collect();
        assert_eq!(indices, vec![(2, 3), (3, 4)]);
        assert_eq!(trail[0].new_factor, "Q1");
        assert_eq!(trail[1].new_factor, "Q2");
        assert!(fcand.is_rigid(&fspec));
        assert_eq!(fcand.rigidity_index(&fspec).unwrap(), 4);

        // Conservativity across both rounds.
        let names: Vec<String> = trail.iter().map(|s| s.new_factor.clone()).collect();
        let erased = erase_factors(&fcand, &fspec, &names);
        let original = summand_multiset(&cand, &spec);
        assert_eq!(uniform_multiple(&erased, &original), Some(1));

        // Every step names a summand that was trivial on all noncompact
        // embeddings at its time; the first is the least-key one.
        assert_eq!(trail[0].summand, "A:a2:cwedge(1)");
        assert_eq!(trail[0].alpha0, "a2");
    }

    #[test]
    fn stale_witness_is_rejected() {
        let spec = quadratic_spec();
        let cand = orbit_candidate(&spec, "a1");
        let w = find_nonrigid_witness(&cand, &spec).unwrap();
        let out = augment(&cand, &spec, &w).unwrap();
        let err = augment(&out.candidate, &out.spec, &w).unwrap_err();
        assert!(matches!(err, RigidifyError::StaleWitness { .. }));
    }

    #[test]
    fn non_primary_candidates_are_refused() {
        let spec = quadratic_spec();
        // Orbit plus an extra copy of only one side: multiplicities are
        // no longer uniform.
        let a1 = wedge_summand(&spec, "a1");
        let a2 = wedge_summand(&spec, "a2");
        let cand = Candidate::new(&spec, vec![(a1, 2), (a2, 1)]);
        let err = rigidify(&cand, &spec).unwrap_err();
        assert!(matches!(
            err,
            RigidifyError::Satake(SatakeError::NotPrimary)
        ));
    }

    #[test]
    fn uniform_multiple_detects_scaling_and_mismatch() {
        let a = vec![("x".to_string(), 4u32), ("y".to_string(), 2)];
        let b = vec![("x".to_string(), 2u32), ("y".to_string(), 1)];
        assert_eq!(uniform_multiple(&a, &b), Some(2));
        assert_eq!(uniform_multiple(&b, &a), None);
        let c = vec![("x".to_string(), 4u32), ("y".to_string(), 3)];
        assert_eq!(uniform_multiple(&c, &b), None);
        assert_eq!(uniform_multiple(&[], &[]), None);
    }
}
