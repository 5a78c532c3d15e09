//! Input model for a hermitian group over a totally real number field:
//! factors (absolutely simple groups), their real embeddings with
//! signatures, and a Galois permutation action on those embeddings.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)
//! factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=compact
//! galois perm=(a1 a2)(b1 b2)
//! ```
//!
//! Signature conventions by factor type:
//! * type I (special unitary): every embedding carries `(p,q)` with
//!   `p ≥ q` and `p + q = n`; `q = 0` (or the `compact` token) marks the
//!   compact form.
//! * types II and III (quaternion unitary / symplectic): a noncompact
//!   embedding omits the signature; `compact` marks the compact form.
//! * type IV (orthogonal): the factor parameter is `p`; a noncompact
//!   embedding carries `(p,2)`, the compact form `(p+2,0)` or `compact`.
//!
//! Each `galois perm=` line contributes one generator in cycle notation;
//! the generated group must act transitively on every factor's embedding
//! set.

pub mod parse;
pub mod perm;
pub mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use perm::{generate_group, Perm};
use thiserror::Error;

/// Index into [`GroupSpec::embeddings`].
pub type EmbIdx = usize;

/// Default cap on the order of the Galois permutation group.
pub const DEFAULT_GROUP_BOUND: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum SatakeType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for SatakeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SatakeType::I => "I",
            SatakeType::II => "II",
            SatakeType::III => "III",
            SatakeType::IV => "IV",
        };
        write!(f, "{s}")
    }
}

/// Real form of one factor at one embedding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Signature {
    /// Type I: su(p,q) with p ≥ q; q = 0 is the compact form.
    Unitary { p: u32, q: u32 },
    /// Types II and III: the noncompact real form (so*(2n) / sp(2n,ℝ)).
    Split,
    /// Types II, III and IV: the compact real form.
    Compact,
    /// Type IV: so(p,2).
    Lorentz { p: u32 },
}

impl Signature {
    pub fn is_noncompact(&self) -> bool {
        match self {
            Signature::Unitary { q, .. } => *q > 0,
            Signature::Split => true,
            Signature::Compact => false,
            Signature::Lorentz { .. } => true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingInfo {
    pub label: String,
    pub factor: usize,
    pub sig: Signature,
}

#[derive(Clone, Debug)]
pub struct FactorSpec {
    pub name: String,
    pub satake_type: SatakeType,
    /// Type-dependent parameter: I: n = p + q; II: n of so*(2n);
    /// III: n of sp(2n,ℝ); IV: p of so(p,2).
    pub n: u32,
    /// Indices into `GroupSpec::embeddings`, sorted by label.
    pub embeddings: Vec<EmbIdx>,
}

impl FactorSpec {
    /// Dimension of the standard (vector) representation of the
    /// complexified factor.
    pub fn std_dim(&self) -> u32 {
        match self.satake_type {
            SatakeType::I => self.n,
            SatakeType::II | SatakeType::III => 2 * self.n,
            SatakeType::IV => self.n + 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GaloisAction {
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl GaloisAction {
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All group elements, identity first, then lexicographic by image
    /// vector.  This ordering is the canonical block order everywhere.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A validated group specification.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    factors: Vec<FactorSpec>,
    embeddings: Vec<EmbeddingInfo>,
    galois: GaloisAction,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{msg}")]
    Invalid { msg: String },
}

impl SpecError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        SpecError::Invalid { msg: msg.into() }
    }
}

/// Unvalidated factor data, as produced by the parser or by builders.
#[derive(Clone, Debug)]
pub struct RawFactor {
    pub name: String,
    pub satake_type: SatakeType,
    pub n: u32,
    pub embeddings: Vec<String>,
    /// Explicit signatures; an embedding may legitimately be absent here
    /// (types II/III noncompact).
    pub sigs: BTreeMap<String, RawSig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawSig {
    Pair(u32, u32),
    CompactWord,
}

/// Unvalidated specification: factors plus Galois generators given as
/// cycles of embedding labels.
#[derive(Clone, Debug, Default)]
pub struct RawSpec {
    pub factors: Vec<RawFactor>,
    pub generators: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub group_bound: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            group_bound: DEFAULT_GROUP_BOUND,
        }
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RawSpec {
    pub fn build(&self) -> Result<GroupSpec, SpecError> {
        self.build_with(BuildOptions::default())
    }

    pub fn build_with(&self, opts: BuildOptions) -> Result<GroupSpec, SpecError> {
        if self.factors.is_empty() {
            return Err(SpecError::invalid("specification declares no factors"));
        }

        // Factor names: unique, well-formed, sorted for canonical order.
        let mut factors_raw: Vec<&RawFactor> = self.factors.iter().collect();
        factors_raw.sort_by(|a, b| a.name.cmp(&b.name));
        for w in factors_raw.windows(2) {
            if w[0].name == w[1].name {
                return Err(SpecError::invalid(format!(
                    "duplicate factor name `{}`",
                    w[0].name
                )));
            }
        }

        // Embedding labels: globally unique, well-formed.
        let mut all_labels: BTreeSet<&str> = BTreeSet::new();
        for f in &factors_raw {
            if !valid_name(&f.name) {
                return Err(SpecError::invalid(format!(
                    "factor name `{}` must be alphanumeric/underscore",
                    f.name
                )));
            }
            if f.embeddings.is_empty() {
                return Err(SpecError::invalid(format!(
                    "factor `{}` declares no embeddings",
                    f.name
                )));
            }
            for e in &f.embeddings {
                if !valid_name(e) {
                    return Err(SpecError::invalid(format!(
                        "embedding label `{e}` must be alphanumeric/underscore"
                    )));
                }
                if !all_labels.insert(e) {
                    return Err(SpecError::invalid(format!(
                        "embedding label `{e}` is declared twice"
                    )));
                }
            }
            for lbl in f.sigs.keys() {
                if !f.embeddings.contains(lbl) {
                    return Err(SpecError::invalid(format!(
                        "factor `{}` assigns a signature to unknown embedding `{lbl}`",
                        f.name
                    )));
                }
            }
        }

        // Resolve signatures per type.
        let mut embeddings: Vec<EmbeddingInfo> = Vec::new();
        for (fi, f) in factors_raw.iter().enumerate() {
            check_parameter(f)?;
            let mut labels = f.embeddings.clone();
            labels.sort();
            for lbl in labels {
                let sig = resolve_sig(f, &lbl, f.sigs.get(&lbl))?;
                embeddings.push(EmbeddingInfo {
                    label: lbl,
                    factor: fi,
                    sig,
                });
            }
        }
        // Canonical embedding order: global sort by label.
        embeddings.sort_by(|a, b| a.label.cmp(&b.label));
        let emb_index: BTreeMap<&str, usize> = embeddings
            .iter()
            .enumerate()
            .map(|(i, e)| (e.label.as_str(), i))
            .collect();

        let factors: Vec<FactorSpec> = factors_raw
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let mut idxs: Vec<usize> = embeddings
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.factor == fi)
                    .map(|(i, _)| i)
                    .collect();
                idxs.sort();
                FactorSpec {
                    name: f.name.clone(),
                    satake_type: f.satake_type,
                    n: f.n,
                    embeddings: idxs,
                }
            })
            .collect();

        // Every factor needs a noncompact embedding.
        for f in &factors {
            if !f.embeddings.iter().any(|&e| embeddings[e].sig.is_noncompact()) {
                return Err(SpecError::invalid(format!(
                    "factor `{}` has no noncompact embedding",
                    f.name
                )));
            }
        }

        // Galois generators.
        let n = embeddings.len();
        let mut generators = Vec::new();
        for cycles in &self.generators {
            let mut idx_cycles = Vec::new();
            for cycle in cycles {
                if cycle.len() < 2 {
                    return Err(SpecError::invalid(
                        "galois cycles need at least two labels",
                    ));
                }
                let mut c = Vec::new();
                for lbl in cycle {
                    let &i = emb_index.get(lbl.as_str()).ok_or_else(|| {
                        SpecError::invalid(format!(
                            "galois generator names unknown embedding `{lbl}`"
                        ))
                    })?;
                    c.push(i);
                }
                idx_cycles.push(c);
            }
            let p = Perm::from_cycles(n, &idx_cycles).ok_or_else(|| {
                SpecError::invalid("galois generator cycles are not disjoint")
            })?;
            // Factor preservation.
            for i in 0..n {
                if embeddings[p.apply(i)].factor != embeddings[i].factor {
                    return Err(SpecError::invalid(format!(
                        "galois generator maps embedding `{}` across factors to `{}`",
                        embeddings[i].label,
                        embeddings[p.apply(i)].label
                    )));
                }
            }
            if !p.is_identity() {
                generators.push(p);
            }
        }
        let elements = generate_group(n, &generators, opts.group_bound).ok_or_else(|| {
            SpecError::invalid(format!(
                "galois group exceeds the order bound {}",
                opts.group_bound
            ))
        })?;

        // Transitivity on each factor's embedding set.
        for f in &factors {
            let first = f.embeddings[0];
            let orbit: BTreeSet<usize> =
                elements.iter().map(|s| s.apply(first)).collect();
            let want: BTreeSet<usize> = f.embeddings.iter().copied().collect();
            if orbit != want {
                return Err(SpecError::invalid(format!(
                    "galois group is not transitive on the embeddings of factor `{}`",
                    f.name
                )));
            }
        }

        let spec = GroupSpec {
            factors,
            embeddings,
            galois: GaloisAction {
                generators,
                elements,
            },
        };
        debug_assert!(!spec.s0().is_empty());
        Ok(spec)
    }
}

fn check_parameter(f: &RawFactor) -> Result<(), SpecError> {
    match f.satake_type {
        SatakeType::I => {
            if f.n < 2 {
                return Err(SpecError::invalid(format!(
                    "factor `{}`: type I needs n ≥ 2",
                    f.name
                )));
            }
        }
        SatakeType::II => {
            if f.n < 5 {
                return Err(SpecError::invalid(format!(
                    "factor `{}`: type II is supported only for n ≥ 5; smaller n \
                     coincides with groups of other types and is out of scope",
                    f.name
                )));
            }
        }
        SatakeType::III => {
            if f.n < 1 {
                return Err(SpecError::invalid(format!(
                    "factor `{}`: type III needs n ≥ 1",
                    f.name
                )));
            }
        }
        SatakeType::IV => {
            if f.n < 1 {
                return Err(SpecError::invalid(format!(
                    "factor `{}`: type IV needs p ≥ 1",
                    f.name
                )));
            }
            if f.n == 2 {
                return Err(SpecError::invalid(format!(
                    "factor `{}`: type IV with p = 2 is an excluded signature",
                    f.name
                )));
            }
        }
    }
    Ok(())
}

fn resolve_sig(
    f: &RawFactor,
    label: &str,
    raw: Option<&RawSig>,
) -> Result<Signature, SpecError> {
    let fail = |msg: String| Err(SpecError::Invalid { msg });
    match f.satake_type {
        SatakeType::I => match raw {
            None => fail(format!(
                "factor `{}`: type I embedding `{label}` needs an explicit signature",
                f.name
            )),
            Some(RawSig::CompactWord) => Ok(Signature::Unitary { p: f.n, q: 0 }),
            Some(&RawSig::Pair(p, q)) => {
                if p + q != f.n {
                    fail(format!(
                        "factor `{}`: signature ({p},{q}) at `{label}` must sum to n = {}",
                        f.name, f.n
                    ))
                } else if p < q {
                    fail(format!(
                        "factor `{}`: signature ({p},{q}) at `{label}` must list the \
                         larger index first",
                        f.name
                    ))
                } else {
                    Ok(Signature::Unitary { p, q })
                }
            }
        },
        SatakeType::II | SatakeType::III => match raw {
            None => Ok(Signature::Split),
            Some(RawSig::CompactWord) => Ok(Signature::Compact),
            Some(RawSig::Pair(..)) => fail(format!(
                "factor `{}`: type {} embeddings take `compact` or no signature, \
                 not a numeric pair",
                f.name, f.satake_type
            )),
        },
        SatakeType::IV => match raw {
            None => fail(format!(
                "factor `{}`: type IV embedding `{label}` needs an explicit signature",
                f.name
            )),
            Some(RawSig::CompactWord) => Ok(Signature::Compact),
            Some(&RawSig::Pair(p, q)) => {
                if q == 2 && p == f.n {
                    Ok(Signature::Lorentz { p })
                } else if q == 0 && p == f.n + 2 {
                    Ok(Signature::Compact)
                } else {
                    fail(format!(
                        "factor `{}`: type IV signature at `{label}` must be ({},2) \
                         or ({},0)/compact",
                        f.name,
                        f.n,
                        f.n + 2
                    ))
                }
            }
        },
    }
}

impl GroupSpec {
    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn embeddings(&self) -> &[EmbeddingInfo] {
        &self.embeddings
    }

    pub fn galois(&self) -> &GaloisAction {
        &self.galois
    }

    pub fn emb_count(&self) -> usize {
        self.embeddings.len()
    }

    pub fn label(&self, e: EmbIdx) -> &str {
        &self.embeddings[e].label
    }

    pub fn sig(&self, e: EmbIdx) -> Signature {
        self.embeddings[e].sig
    }

    pub fn factor_of(&self, e: EmbIdx) -> &FactorSpec {
        &self.factors[self.embeddings[e].factor]
    }

    pub fn is_noncompact(&self, e: EmbIdx) -> bool {
        self.embeddings[e].sig.is_noncompact()
    }

    /// Noncompact embeddings (the set S₀).
    pub fn s0(&self) -> Vec<EmbIdx> {
        (0..self.emb_count())
            .filter(|&e| self.is_noncompact(e))
            .collect()
    }

    pub fn find_emb(&self, label: &str) -> Option<EmbIdx> {
        self.embeddings
            .binary_search_by(|e| e.label.as_str().cmp(label))
            .ok()
    }

    /// Canonical text rendering; two specs are interchangeable iff their
    /// canonical texts agree.
    pub fn canonical_text(&self) -> String {
        render::render_group_spec(self)
    }

    /// Degenerate into raw form (used by the augmentation step, which
    /// extends a spec with a fresh factor).
    pub fn to_raw(&self) -> RawSpec {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let mut sigs = BTreeMap::new();
                for &e in &f.embeddings {
                    let raw = match self.embeddings[e].sig {
                        Signature::Unitary { p, q } => Some(RawSig::Pair(p, q)),
                        Signature::Split => None,
                        Signature::Compact => Some(RawSig::CompactWord),
                        Signature::Lorentz { p } => Some(RawSig::Pair(p, 2)),
                    };
                    if let Some(raw) = raw {
                        sigs.insert(self.embeddings[e].label.clone(), raw);
                    }
                }
                RawFactor {
                    name: f.name.clone(),
                    satake_type: f.satake_type,
                    n: f.n,
                    embeddings: f
                        .embeddings
                        .iter()
                        .map(|&e| self.embeddings[e].label.clone())
                        .collect(),
                    sigs,
                }
            })
            .collect();
        let generators = self
            .galois
            .generators
            .iter()
            .map(|g| {
                g.cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|i| self.label(i).to_string()).collect())
                    .collect()
            })
            .collect();
        RawSpec {
            factors,
            generators,
        }
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_text() == other.canonical_text()
    }
}

impl Eq for GroupSpec {}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_factor_raw() -> RawSpec {
        RawSpec {
            factors: vec![
                RawFactor {
                    name: "G2".into(),
                    satake_type: SatakeType::I,
                    n: 6,
                    embeddings: vec!["b1".into(), "b2".into()],
                    sigs: [
                        ("b1".to_string(), RawSig::Pair(5, 1)),
                        ("b2".to_string(), RawSig::CompactWord),
                    ]
                    .into_iter()
                    .collect(),
                },
                RawFactor {
                    name: "G1".into(),
                    satake_type: SatakeType::I,
                    n: 2,
                    embeddings: vec!["a1".into(), "a2".into()],
                    sigs: [
                        ("a1".to_string(), RawSig::Pair(1, 1)),
                        ("a2".to_string(), RawSig::Pair(2, 0)),
                    ]
                    .into_iter()
                    .collect(),
                },
            ],
            generators: vec![vec![
                vec!["a1".into(), "a2".into()],
                vec!["b1".into(), "b2".into()],
            ]],
        }
    }

    #[test]
    fn builds_and_sorts_canonically() {
        let spec = two_factor_raw().build().unwrap();
        // Factors sorted by name even though declared out of order.
        assert_eq!(spec.factors()[0].name, "G1");
        assert_eq!(spec.factors()[1].name, "G2");
        // Embeddings globally sorted by label.
        let labels: Vec<&str> = spec.embeddings().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, vec!["a1", "a2", "b1", "b2"]);
        assert_eq!(spec.s0(), vec![0, 2]);
        assert_eq!(spec.galois().order(), 2);
    }

    #[test]
    fn compact_word_normalizes_for_type_one() {
        let spec = two_factor_raw().build().unwrap();
        let b2 = spec.find_emb("b2").unwrap();
        assert_eq!(spec.sig(b2), Signature::Unitary { p: 6, q: 0 });
        assert!(!spec.is_noncompact(b2));
    }

    #[test]
    fn signature_sum_enforced() {
        let mut raw = two_factor_raw();
        raw.factors[1]
            .sigs
            .insert("a1".into(), RawSig::Pair(2, 1));
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("must sum to n"));
    }

    #[test]
    fn all_compact_factor_rejected() {
        let mut raw = two_factor_raw();
        raw.factors[1]
            .sigs
            .insert("a1".into(), RawSig::CompactWord);
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("no noncompact embedding"));
    }

    #[test]
    fn cross_factor_generator_rejected() {
        let mut raw = two_factor_raw();
        raw.generators = vec![vec![vec!["a1".into(), "b1".into()]]];
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("across factors"));
    }

    #[test]
    fn intransitive_action_rejected() {
        let mut raw = two_factor_raw();
        raw.generators = vec![vec![vec!["a1".into(), "a2".into()]]];
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("not transitive"));
    }

    #[test]
    fn type_two_low_rank_rejected() {
        let raw = RawSpec {
            factors: vec![RawFactor {
                name: "H".into(),
                satake_type: SatakeType::II,
                n: 4,
                embeddings: vec!["e1".into()],
                sigs: BTreeMap::new(),
            }],
            generators: vec![],
        };
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("n ≥ 5"));
    }

    #[test]
    fn type_four_p_two_rejected() {
        let raw = RawSpec {
            factors: vec![RawFactor {
                name: "H".into(),
                satake_type: SatakeType::IV,
                n: 2,
                embeddings: vec!["e1".into()],
                sigs: [("e1".to_string(), RawSig::Pair(2, 2))].into_iter().collect(),
            }],
            generators: vec![],
        };
        let err = raw.build().unwrap_err();
        assert!(err.to_string().contains("excluded signature"));
    }

    #[test]
    fn raw_round_trip_preserves_spec() {
        let spec = two_factor_raw().build().unwrap();
        let again = spec.to_raw().build().unwrap();
        assert_eq!(spec, again);
    }
}
