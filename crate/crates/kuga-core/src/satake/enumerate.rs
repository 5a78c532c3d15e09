//! Enumeration of primary Galois-stable candidates under a total real
//! dimension bound.
//!
//! A seed summand is a choice of support (a set of embeddings containing
//! at most one noncompact embedding) together with a nontrivial
//! admissible object at each; the candidate generated by the seed is its
//! full Galois orbit with multiplicity one.  Seeds whose orbit leaves
//! the admissible table, violates stability, or exceeds the dimension
//! bound are discarded.  Candidates are deduplicated by canonical key.

use std::collections::BTreeMap;

use super::{enumerate_local_reps, Candidate, Leg, LocalKind, Summand};
use crate::spec::GroupSpec;

/// Enumerate the candidates of total realized dimension at most
/// `max_dim`, sorted by (dimension, key).
pub fn enumerate_candidates(spec: &GroupSpec, max_dim: u64) -> Vec<Candidate> {
    let slots: Vec<usize> = (0..spec.emb_count()).collect();
    // Nontrivial descriptors per slot, sorted by ascending dimension so
    // the product prune below can break early.
    let per_slot: Vec<Vec<(LocalKind, u64)>> = slots
        .iter()
        .map(|&e| {
            let factor = spec.factor_of(e);
            let mut v: Vec<(LocalKind, u64)> = enumerate_local_reps(spec, e, max_dim)
                .into_iter()
                .filter(|k| *k != LocalKind::Trivial)
                .map(|k| (k, k.real_dim(factor)))
                .filter(|&(_, d)| d <= max_dim)
                .collect();
            v.sort_by_key(|&(k, d)| (d, k));
            v
        })
        .collect();

    let mut found: BTreeMap<String, Candidate> = BTreeMap::new();
    let mut legs: Vec<Leg> = Vec::new();
    descend(
        spec,
        &per_slot,
        0,
        false,
        1,
        max_dim,
        &mut legs,
        &mut found,
    );

    let mut out: Vec<(u64, String, Candidate)> = found
        .into_iter()
        .map(|(k, c)| (c.real_dim(spec), k, c))
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, c)| c).collect()
}

#[allow(clippy::too_many_arguments)]
fn descend(
    spec: &GroupSpec,
    per_slot: &[Vec<(LocalKind, u64)>],
    slot: usize,
    used_noncompact: bool,
    dim_product: u64,
    max_dim: u64,
    legs: &mut Vec<Leg>,
    found: &mut BTreeMap<String, Candidate>,
) {
    if slot == per_slot.len() {
        if !legs.is_empty() {
            try_seed(spec, legs, max_dim, found);
        }
        return;
    }
    // Skip this slot.
    descend(
        spec,
        per_slot,
        slot + 1,
        used_noncompact,
        dim_product,
        max_dim,
        legs,
        found,
    );
    // Or put one admissible object here (stability: at most one
    // noncompact slot in the seed's support).
    let noncompact = spec.is_noncompact(slot);
    if noncompact && used_noncompact {
        return;
    }
    for &(kind, d) in &per_slot[slot] {
        let dim = dim_product.saturating_mul(d);
        if dim > max_dim {
            break; // sorted ascending: nothing further fits
        }
        legs.push(Leg { emb: slot, kind });
        descend(
            spec,
            per_slot,
            slot + 1,
            used_noncompact || noncompact,
            dim,
            max_dim,
            legs,
            found,
        );
        legs.pop();
    }
}

fn try_seed(
    spec: &GroupSpec,
    legs: &[Leg],
    max_dim: u64,
    found: &mut BTreeMap<String, Candidate>,
) {
    let seed = Summand::new(legs.to_vec());
    let mut orbit: BTreeMap<String, Summand> = BTreeMap::new();
    for sigma in spec.galois().elements() {
        let Ok(c) = seed.conjugate(spec, sigma) else {
            return; // some conjugate is inadmissible
        };
        if !c.is_stable(spec) {
            return;
        }
        orbit.insert(c.key(spec), c);
    }
    let cand = Candidate::new(spec, orbit.into_values().map(|s| (s, 1)).collect());
    if cand.real_dim(spec) > max_dim {
        return;
    }
    debug_assert!(cand.is_galois_stable(spec));
    debug_assert!(cand.is_primary(spec));
    found.entry(cand.key(spec)).or_insert(cand);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse::parse_group_spec;

    fn sec6_like() -> GroupSpec {
        parse_group_spec(
            "factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)\n\
             factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=compact\n\
             galois perm=(a1 a2)(b1 b2)\n",
        )
        .unwrap()
    }

    #[test]
    fn two_factor_enumeration_at_512() {
        let spec = sec6_like();
        let cands = enumerate_candidates(&spec, 512);
        let keys: Vec<String> = cands.iter().map(|c| c.key(&spec)).collect();
        let dims: Vec<u64> = cands.iter().map(|c| c.real_dim(&spec)).collect();
        assert_eq!(
            keys,
            vec![
                "G1:a1:wmid(1)⊕G1:a2:cwedge(1)",
                "G1:a1:wmid(1)⊗G1:a2:cwedge(1)",
                "G2:b1:wedgepair(1)⊕G2:b2:cwedge(1)",
                "G2:b1:wedgepair(2)⊕G2:b2:cwedge(2)",
                "G2:b1:wmid(3)⊕G2:b2:cwedge(3)",
                "G1:a1:wmid(1)⊗G2:b2:cwedge(1)⊕G1:a2:cwedge(1)⊗G2:b1:wedgepair(1)",
                "G2:b1:wedgepair(1)⊗G2:b2:cwedge(1)",
                "G1:a1:wmid(1)⊗G2:b2:cwedge(2)⊕G1:a2:cwedge(1)⊗G2:b1:wedgepair(2)",
                "G1:a1:wmid(1)⊗G2:b2:cwedge(3)⊕G1:a2:cwedge(1)⊗G2:b1:wmid(3)",
            ]
        );
        assert_eq!(dims, vec![8, 16, 24, 60, 80, 96, 144, 240, 320]);
        for c in &cands {
            assert!(c.is_galois_stable(&spec));
            assert!(c.is_primary(&spec));
            c.validate(&spec).unwrap();
        }
        // Family grouping: five families.
        let mut families: Vec<String> = cands.iter().map(|c| c.family_key(&spec)).collect();
        families.sort();
        families.dedup();
        assert_eq!(
            families,
            vec![
                "G1:a1:wedge",
                "G1:a1:wedge⊗G1:a2:wedge",
                "G1:a1:wedge⊗G2:b2:wedge",
                "G2:b1:wedge",
                "G2:b1:wedge⊗G2:b2:wedge",
            ]
        );
    }

    #[test]
    fn larger_bound_adds_off_diagonal_pairs() {
        let spec = sec6_like();
        let cands = enumerate_candidates(&spec, 1000);
        assert_eq!(cands.len(), 12);
        let dims: Vec<u64> = cands.iter().map(|c| c.real_dim(&spec)).collect();
        assert_eq!(dims, vec![8, 16, 24, 60, 80, 96, 144, 240, 320, 720, 900, 960]);
    }

    #[test]
    fn rigidity_split_matches_expectation() {
        let spec = sec6_like();
        let cands = enumerate_candidates(&spec, 512);
        let rigid: Vec<u64> = cands
            .iter()
            .filter(|c| c.is_rigid(&spec))
            .map(|c| c.real_dim(&spec))
            .collect();
        assert_eq!(rigid, vec![16, 96, 144, 240, 320]);
        for c in &cands {
            let idx = c.rigidity_index(&spec).unwrap();
            assert_eq!(idx == spec.galois().order(), c.is_rigid(&spec));
        }
    }

    #[test]
    fn tight_bound_filters_everything() {
        let spec = sec6_like();
        assert!(enumerate_candidates(&spec, 4).is_empty());
        let only_smallest = enumerate_candidates(&spec, 8);
        assert_eq!(only_smallest.len(), 1);
        assert_eq!(only_smallest[0].real_dim(&spec), 8);
    }

    #[test]
    fn single_factor_spin_candidates() {
        // so(3,2) at one embedding, so(5) at the other, swapped by the
        // Galois involution.
        let spec = parse_group_spec(
            "factor B type=IV n=3 embeddings=c1,c2 sig(c1)=(3,2) sig(c2)=compact\n\
             galois perm=(c1 c2)\n",
        )
        .unwrap();
        let cands = enumerate_candidates(&spec, 64);
        let keys: Vec<String> = cands.iter().map(|c| c.key(&spec)).collect();
        assert!(keys.contains(&"B:c1:spin⊕B:c2:cspin".to_string()));
        assert!(keys.contains(&"B:c1:spin⊗B:c2:cspin".to_string()));
        // The tensor candidate is rigid (one noncompact leg per summand).
        let tensor = cands
            .iter()
            .find(|c| c.key(&spec) == "B:c1:spin⊗B:c2:cspin")
            .unwrap();
        assert!(tensor.is_rigid(&spec));
        assert_eq!(tensor.real_dim(&spec), 64);
    }
}
