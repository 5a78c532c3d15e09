//! Classification rules for symplectic representation candidates: the
//! finite list of admissible local objects at each real embedding, how
//! Galois conjugation transports them between embeddings, stability and
//! rigidity predicates, and enumeration of Galois-stable candidates
//! under a dimension bound.

mod enumerate;
mod key;

pub use enumerate::enumerate_candidates;
pub use key::parse_candidate_key;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::spec::perm::Perm;
use crate::spec::{EmbIdx, FactorSpec, GroupSpec, SatakeType, Signature};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    fn token(self) -> &'static str {
        match self {
            Chirality::Plus => "+",
            Chirality::Minus => "-",
        }
    }
}

/// Which part of the spinor module a spin-like object uses.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SpinShape {
    Full,
    Half(Chirality),
    Both,
}

/// An admissible local object at one embedding (one leg of a summand).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LocalKind {
    /// Type I, signature (p,q) with p ≥ q ≥ 2: standard plus its
    /// contragredient.
    StdPlusContra,
    /// Type I, signature (p,1): ∧ᵏ ⊕ ∧^{p+1−k} for 2k < p+1.
    WedgePair(u32),
    /// Type I, signature (p,1), 2k = p+1, p ≡ 1 (mod 4).
    WedgeMiddleSingle(u32),
    /// Type I, signature (p,1), 2k = p+1, p ≡ 3 (mod 4): two copies.
    WedgeMiddleDouble(u32),
    /// Type II: two copies of the standard representation.
    TwoCopiesStd,
    /// Type III: the standard representation.
    Std,
    /// Type IV, p ≡ 1,3 (mod 8): spin representation.
    SpinSingle,
    /// Type IV, p ≡ 5,7 (mod 8): two copies of the spin representation.
    SpinDouble,
    /// Type IV, p ≡ 2 (mod 8): one half-spin representation.
    HalfSpin(Chirality),
    /// Type IV, p ≡ 6 (mod 8): two copies of one half-spin representation.
    HalfSpinDouble(Chirality),
    /// Type IV, p ≡ 0 (mod 4): both half-spin representations.
    BothHalfSpins,
    /// Compact embedding: k-th exterior power of the standard module.
    CompactWedge(u32),
    /// Compact embedding of a type IV factor: spinor module.
    CompactSpin(SpinShape),
    /// The trivial representation.
    Trivial,
}

/// Galois-transportable content of a local object: what is carried to
/// another embedding of the same factor, where the signature there
/// decides the admissible kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Content {
    Wedge(u32),
    Spin(SpinShape),
    Trivial,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SatakeError {
    #[error("leg {leg}: {reason}")]
    NotAdmissible { leg: String, reason: String },
    #[error(
        "summand `{summand}` has no admissible conjugate under ({element}): {reason}"
    )]
    IllegalConjugate {
        summand: String,
        element: String,
        reason: String,
    },
    #[error("candidate is not primary: summands are not a single Galois orbit")]
    NotPrimary,
    #[error("malformed candidate key: {0}")]
    BadKey(String),
    #[error("candidate contains a summand with no nontrivial leg")]
    TrivialSummand,
    #[error("candidate violates stability: summand `{summand}` is nontrivial at \
             noncompact embeddings {embs}")]
    Unstable { summand: String, embs: String },
    #[error("candidate is not Galois stable: generator ({element}) moves it")]
    NotGaloisStable { element: String },
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc
            .saturating_mul(n - i)
            .checked_div(i + 1)
            .expect("binomial recurrence keeps exact divisibility");
    }
    acc
}

fn pow2(e: u32) -> u64 {
    1u64.checked_shl(e).unwrap_or(u64::MAX)
}

impl LocalKind {
    /// Canonical token used in candidate keys.
    pub fn token(&self) -> String {
        match self {
            LocalKind::StdPlusContra => "stdpair".into(),
            LocalKind::WedgePair(k) => format!("wedgepair({k})"),
            LocalKind::WedgeMiddleSingle(k) => format!("wmid({k})"),
            LocalKind::WedgeMiddleDouble(k) => format!("wmid2({k})"),
            LocalKind::TwoCopiesStd => "std2".into(),
            LocalKind::Std => "std".into(),
            LocalKind::SpinSingle => "spin".into(),
            LocalKind::SpinDouble => "spin2".into(),
            LocalKind::HalfSpin(c) => format!("hspin({})", c.token()),
            LocalKind::HalfSpinDouble(c) => format!("hspin2({})", c.token()),
            LocalKind::BothHalfSpins => "spinboth".into(),
            LocalKind::CompactWedge(k) => format!("cwedge({k})"),
            LocalKind::CompactSpin(SpinShape::Full) => "cspin".into(),
            LocalKind::CompactSpin(SpinShape::Half(c)) => format!("cspin({})", c.token()),
            LocalKind::CompactSpin(SpinShape::Both) => "cspinboth".into(),
            LocalKind::Trivial => "triv".into(),
        }
    }

    /// Family label: parameters and pairing structure erased.
    pub fn family_token(&self) -> &'static str {
        match self {
            LocalKind::StdPlusContra
            | LocalKind::WedgePair(_)
            | LocalKind::WedgeMiddleSingle(_)
            | LocalKind::WedgeMiddleDouble(_)
            | LocalKind::CompactWedge(_) => "wedge",
            LocalKind::TwoCopiesStd | LocalKind::Std => "std",
            LocalKind::SpinSingle
            | LocalKind::SpinDouble
            | LocalKind::HalfSpin(_)
            | LocalKind::HalfSpinDouble(_)
            | LocalKind::BothHalfSpins
            | LocalKind::CompactSpin(_) => "spin",
            LocalKind::Trivial => "triv",
        }
    }

    pub fn content(&self) -> Content {
        match *self {
            LocalKind::StdPlusContra => Content::Wedge(1),
            LocalKind::WedgePair(k)
            | LocalKind::WedgeMiddleSingle(k)
            | LocalKind::WedgeMiddleDouble(k)
            | LocalKind::CompactWedge(k) => Content::Wedge(k),
            LocalKind::TwoCopiesStd | LocalKind::Std => Content::Wedge(1),
            LocalKind::SpinSingle | LocalKind::SpinDouble => Content::Spin(SpinShape::Full),
            LocalKind::HalfSpin(c) | LocalKind::HalfSpinDouble(c) => {
                Content::Spin(SpinShape::Half(c))
            }
            LocalKind::BothHalfSpins => Content::Spin(SpinShape::Both),
            LocalKind::CompactSpin(s) => Content::Spin(s),
            LocalKind::Trivial => Content::Trivial,
        }
    }

    /// Real dimension of the realized symplectic module for this leg.
    pub fn real_dim(&self, factor: &FactorSpec) -> u64 {
        let s = factor.std_dim() as u64;
        match *self {
            LocalKind::StdPlusContra => 2 * s,
            LocalKind::WedgePair(k)
            | LocalKind::WedgeMiddleSingle(k)
            | LocalKind::WedgeMiddleDouble(k) => 2 * binom(s, k as u64),
            LocalKind::TwoCopiesStd => 2 * s,
            LocalKind::Std => s,
            LocalKind::SpinSingle | LocalKind::SpinDouble => {
                // dim of the full spinor module of so(p+2), realified
                pow2((factor.n + 2) / 2).saturating_mul(2)
            }
            LocalKind::HalfSpin(_) | LocalKind::HalfSpinDouble(_)
            | LocalKind::BothHalfSpins => pow2((factor.n + 2) / 2),
            LocalKind::CompactWedge(k) => 2 * binom(s, k as u64),
            LocalKind::CompactSpin(shape) => {
                let m = factor.std_dim();
                match shape {
                    SpinShape::Full => pow2(m / 2).saturating_mul(2),
                    SpinShape::Half(_) | SpinShape::Both => pow2(m / 2),
                }
            }
            LocalKind::Trivial => 2,
        }
    }

    /// Whether the stronger commutation condition is expected to hold
    /// for this leg (`None` for compact and trivial legs, where the
    /// question does not arise).
    pub fn h2_expected(&self, sig: Signature) -> Option<bool> {
        match *self {
            LocalKind::StdPlusContra => match sig {
                Signature::Unitary { p, q } => Some(p == q),
                _ => None,
            },
            LocalKind::WedgePair(_) => Some(false),
            LocalKind::WedgeMiddleSingle(_) | LocalKind::WedgeMiddleDouble(_) => Some(true),
            LocalKind::TwoCopiesStd | LocalKind::Std => Some(true),
            LocalKind::SpinSingle
            | LocalKind::SpinDouble
            | LocalKind::HalfSpin(_)
            | LocalKind::HalfSpinDouble(_)
            | LocalKind::BothHalfSpins => Some(true),
            LocalKind::CompactWedge(_) | LocalKind::CompactSpin(_) | LocalKind::Trivial => {
                None
            }
        }
    }
}

/// The admissible kind realizing `content` at a slot with the given
/// factor and signature, or a reason why none exists.  This map is the
/// single source of truth for admissibility: a kind is legal at a slot
/// iff transporting its own content to that slot reproduces it.
pub fn kind_for_slot(
    content: Content,
    factor: &FactorSpec,
    sig: Signature,
) -> Result<LocalKind, String> {
    match content {
        Content::Trivial => Ok(LocalKind::Trivial),
        Content::Wedge(k) => wedge_kind_for_slot(k, factor, sig),
        Content::Spin(shape) => spin_kind_for_slot(shape, factor, sig),
    }
}

fn wedge_kind_for_slot(
    k: u32,
    factor: &FactorSpec,
    sig: Signature,
) -> Result<LocalKind, String> {
    let s = factor.std_dim();
    if k == 0 {
        return Err("exterior power index must be at least 1".into());
    }
    match (factor.satake_type, sig) {
        (SatakeType::I, Signature::Unitary { p, q }) => {
            if q == 0 {
                if k <= factor.n - 1 {
                    Ok(LocalKind::CompactWedge(k))
                } else {
                    Err(format!(
                        "compact exterior power needs k ≤ {}, got k = {k}",
                        factor.n - 1
                    ))
                }
            } else if q == 1 {
                if 2 * k < p + 1 {
                    Ok(LocalKind::WedgePair(k))
                } else if 2 * k == p + 1 {
                    if p % 4 == 1 {
                        Ok(LocalKind::WedgeMiddleSingle(k))
                    } else {
                        Ok(LocalKind::WedgeMiddleDouble(k))
                    }
                } else {
                    Err(format!(
                        "signature ({p},1) admits exterior powers only for 2k ≤ p+1, \
                         got k = {k}"
                    ))
                }
            } else if k == 1 {
                // p ≥ q ≥ 2: standard plus contragredient.
                Ok(LocalKind::StdPlusContra)
            } else {
                Err(format!(
                    "signature ({p},{q}) with q ≥ 2 admits only the standard module \
                     plus its contragredient, not an exterior power with k = {k}"
                ))
            }
        }
        (SatakeType::II, Signature::Split) => {
            if k == 1 {
                Ok(LocalKind::TwoCopiesStd)
            } else {
                Err(format!(
                    "the noncompact type II form admits only two copies of the \
                     standard module, not an exterior power with k = {k}"
                ))
            }
        }
        (SatakeType::III, Signature::Split) => {
            if k == 1 {
                Ok(LocalKind::Std)
            } else {
                Err(format!(
                    "the noncompact type III form admits only the standard module, \
                     not an exterior power with k = {k}"
                ))
            }
        }
        (SatakeType::II | SatakeType::III | SatakeType::IV, Signature::Compact) => {
            if k <= s / 2 {
                Ok(LocalKind::CompactWedge(k))
            } else {
                Err(format!(
                    "compact exterior power needs k ≤ {}, got k = {k}",
                    s / 2
                ))
            }
        }
        (SatakeType::IV, Signature::Lorentz { p }) => Err(format!(
            "signature ({p},2) admits only spinor objects, not an exterior power"
        )),
        (t, s) => Err(format!(
            "exterior-power content cannot appear at type {t} with signature {s:?}"
        )),
    }
}

fn spin_kind_for_slot(
    shape: SpinShape,
    factor: &FactorSpec,
    sig: Signature,
) -> Result<LocalKind, String> {
    if factor.satake_type != SatakeType::IV {
        return Err(format!(
            "spinor content cannot appear at a type {} factor",
            factor.satake_type
        ));
    }
    let p = factor.n;
    match sig {
        Signature::Lorentz { .. } => match shape {
            SpinShape::Full => match p % 8 {
                1 | 3 => Ok(LocalKind::SpinSingle),
                5 | 7 => Ok(LocalKind::SpinDouble),
                _ => Err(format!(
                    "the full spinor module needs odd p, got p = {p}"
                )),
            },
            SpinShape::Half(c) => match p % 8 {
                2 => Ok(LocalKind::HalfSpin(c)),
                6 => Ok(LocalKind::HalfSpinDouble(c)),
                0 | 4 => Err(format!(
                    "p ≡ 0 (mod 4) admits both half-spin modules together, not one \
                     alone (p = {p})"
                )),
                _ => Err(format!("half-spin modules need even p, got p = {p}")),
            },
            SpinShape::Both => {
                if p % 4 == 0 {
                    Ok(LocalKind::BothHalfSpins)
                } else {
                    Err(format!(
                        "the sum of both half-spin modules is admissible only for \
                         p ≡ 0 (mod 4), got p = {p}"
                    ))
                }
            }
        },
        Signature::Compact => {
            let m = factor.std_dim();
            match shape {
                SpinShape::Full if m % 2 == 1 => Ok(LocalKind::CompactSpin(shape)),
                SpinShape::Half(_) | SpinShape::Both if m % 2 == 0 => {
                    Ok(LocalKind::CompactSpin(shape))
                }
                _ => Err(format!(
                    "spinor shape does not match the parity of m = {m}"
                )),
            }
        }
        other => Err(format!(
            "spinor content cannot appear at signature {other:?}"
        )),
    }
}

/// Check that `kind` is admissible at the given slot.
pub fn check_admissible(
    spec: &GroupSpec,
    emb: EmbIdx,
    kind: LocalKind,
) -> Result<(), SatakeError> {
    let factor = spec.factor_of(emb);
    let sig = spec.sig(emb);
    let leg = format!("{}:{}:{}", factor.name, spec.label(emb), kind.token());
    match kind_for_slot(kind.content(), factor, sig) {
        Ok(k) if k == kind => Ok(()),
        Ok(k) => Err(SatakeError::NotAdmissible {
            leg,
            reason: format!(
                "at signature {sig:?} this content is realized by `{}`",
                k.token()
            ),
        }),
        Err(reason) => Err(SatakeError::NotAdmissible { leg, reason }),
    }
}

/// One leg of a summand: a nontrivial local object at one embedding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Leg {
    pub emb: EmbIdx,
    pub kind: LocalKind,
}

/// An irreducible summand: a tensor product of legs over distinct
/// embeddings (empty = the trivial summand).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Summand {
    legs: Vec<Leg>,
}

impl Summand {
    pub fn new(mut legs: Vec<Leg>) -> Self {
        legs.sort_by_key(|l| l.emb);
        Summand { legs }
    }

    pub fn trivial() -> Self {
        Summand { legs: Vec::new() }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn is_trivial(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn key(&self, spec: &GroupSpec) -> String {
        if self.legs.is_empty() {
            return "triv".into();
        }
        self.legs
            .iter()
            .map(|l| {
                format!(
                    "{}:{}:{}",
                    spec.factor_of(l.emb).name,
                    spec.label(l.emb),
                    l.kind.token()
                )
            })
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Family label of this summand: kind parameters erased.
    pub fn family_key(&self, spec: &GroupSpec) -> String {
        if self.legs.is_empty() {
            return "triv".into();
        }
        self.legs
            .iter()
            .map(|l| {
                format!(
                    "{}:{}:{}",
                    spec.factor_of(l.emb).name,
                    spec.label(l.emb),
                    l.kind.family_token()
                )
            })
            .collect::<Vec<_>>()
            .join("⊗")
    }

    pub fn real_dim(&self, spec: &GroupSpec) -> u64 {
        self.legs
            .iter()
            .map(|l| l.kind.real_dim(spec.factor_of(l.emb)))
            .fold(1u64, u64::saturating_mul)
    }

    /// Embeddings where this summand is nontrivial and noncompact.
    pub fn noncompact_support(&self, spec: &GroupSpec) -> Vec<EmbIdx> {
        self.legs
            .iter()
            .filter(|l| spec.is_noncompact(l.emb))
            .map(|l| l.emb)
            .collect()
    }

    /// Stability: nontrivial at no more than one noncompact embedding.
    pub fn is_stable(&self, spec: &GroupSpec) -> bool {
        self.noncompact_support(spec).len() <= 1
    }

    /// Rigidity: nontrivial at exactly one noncompact embedding.
    pub fn is_rigid(&self, spec: &GroupSpec) -> bool {
        self.noncompact_support(spec).len() == 1
    }

    /// Transport along a Galois element: relabel each leg's embedding
    /// and re-derive the kind admissible for its content there.
    pub fn conjugate(&self, spec: &GroupSpec, sigma: &Perm) -> Result<Summand, SatakeError> {
        let mut legs = Vec::with_capacity(self.legs.len());
        for l in &self.legs {
            let target = sigma.apply(l.emb);
            let factor = spec.factor_of(target);
            let kind = kind_for_slot(l.kind.content(), factor, spec.sig(target)).map_err(
                |reason| SatakeError::IllegalConjugate {
                    summand: self.key(spec),
                    element: perm_cycles_string(spec, sigma),
                    reason: format!(
                        "content of `{}` has no admissible realization at {}:{}: {reason}",
                        l.kind.token(),
                        factor.name,
                        spec.label(target)
                    ),
                },
            )?;
            legs.push(Leg { emb: target, kind });
        }
        Ok(Summand::new(legs))
    }
}

pub fn perm_cycles_string(spec: &GroupSpec, p: &Perm) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "id".into();
    }
    cycles
        .into_iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|&i| spec.label(i)).collect();
            format!("({})", labels.join(" "))
        })
        .collect::<Vec<_>>()
        .join("")
}

/// A candidate: a multiset of summands, canonically ordered by key.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Candidate {
    summands: Vec<(Summand, u32)>,
}

impl Candidate {
    /// Build from a list of (summand, multiplicity); merges duplicates
    /// and sorts canonically.  Requires key computation, hence the spec.
    pub fn new(spec: &GroupSpec, parts: Vec<(Summand, u32)>) -> Self {
        let mut keyed: Vec<(String, Summand, u32)> = Vec::new();
        'outer: for (s, m) in parts {
            if m == 0 {
                continue;
            }
            let k = s.key(spec);
            for e in keyed.iter_mut() {
                if e.0 == k {
                    e.2 += m;
                    continue 'outer;
                }
            }
            keyed.push((k, s, m));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Candidate {
            summands: keyed.into_iter().map(|(_, s, m)| (s, m)).collect(),
        }
    }

    pub fn summands(&self) -> &[(Summand, u32)] {
        &self.summands
    }

    pub fn key(&self, spec: &GroupSpec) -> String {
        self.summands
            .iter()
            .map(|(s, m)| {
                if *m == 1 {
                    s.key(spec)
                } else {
                    format!("{}*{m}", s.key(spec))
                }
            })
            .collect::<Vec<_>>()
            .join("⊕")
    }

    /// Family label: least erased summand key.
    pub fn family_key(&self, spec: &GroupSpec) -> String {
        self.summands
            .iter()
            .map(|(s, _)| s.family_key(spec))
            .min()
            .unwrap_or_else(|| "triv".into())
    }

    pub fn real_dim(&self, spec: &GroupSpec) -> u64 {
        self.summands
            .iter()
            .map(|(s, m)| s.real_dim(spec).saturating_mul(*m as u64))
            .fold(0u64, u64::saturating_add)
    }

    /// Structural validation for certification: nonempty, no trivial
    /// summand, distinct embeddings per summand, every leg admissible,
    /// every Galois conjugate of every summand admissible.
    pub fn validate(&self, spec: &GroupSpec) -> Result<(), SatakeError> {
        if self.summands.is_empty() {
            return Err(SatakeError::BadKey("candidate has no summands".into()));
        }
        for (s, _) in &self.summands {
            if s.is_trivial() {
                return Err(SatakeError::TrivialSummand);
            }
            let mut seen = BTreeSet::new();
            for l in s.legs() {
                if !seen.insert(l.emb) {
                    return Err(SatakeError::BadKey(format!(
                        "summand `{}` uses embedding `{}` twice",
                        s.key(spec),
                        spec.label(l.emb)
                    )));
                }
                if l.kind == LocalKind::Trivial {
                    return Err(SatakeError::BadKey(format!(
                        "summand `{}` lists an explicit trivial leg; drop it instead",
                        s.key(spec)
                    )));
                }
                check_admissible(spec, l.emb, l.kind)?;
            }
            for sigma in spec.galois().elements() {
                s.conjugate(spec, sigma)?;
            }
        }
        Ok(())
    }

    /// Stability: every summand is nontrivial at no more than one
    /// noncompact embedding.
    pub fn check_stability(&self, spec: &GroupSpec) -> Result<(), SatakeError> {
        for (s, _) in &self.summands {
            if !s.is_stable(spec) {
                return Err(SatakeError::Unstable {
                    summand: s.key(spec),
                    embs: s
                        .noncompact_support(spec)
                        .iter()
                        .map(|&e| spec.label(e))
                        .collect::<Vec<_>>()
                        .join(","),
                });
            }
        }
        Ok(())
    }

    pub fn is_stable(&self, spec: &GroupSpec) -> bool {
        self.check_stability(spec).is_ok()
    }

    /// Galois stability: each generator permutes the summand multiset.
    pub fn check_galois_stable(&self, spec: &GroupSpec) -> Result<(), SatakeError> {
        for g in spec.galois().generators() {
            let mut image: Vec<(String, u32)> = Vec::new();
            for (s, m) in &self.summands {
                let c = s.conjugate(spec, g)?;
                image.push((c.key(spec), *m));
            }
            image.sort();
            let own: Vec<(String, u32)> = self
                .summands
                .iter()
                .map(|(s, m)| (s.key(spec), *m))
                .collect();
            if image != own {
                return Err(SatakeError::NotGaloisStable {
                    element: perm_cycles_string(spec, g),
                });
            }
        }
        Ok(())
    }

    pub fn is_galois_stable(&self, spec: &GroupSpec) -> bool {
        self.check_galois_stable(spec).is_ok()
    }

    /// Rigidity: every summand is nontrivial at exactly one noncompact
    /// embedding.
    pub fn is_rigid(&self, spec: &GroupSpec) -> bool {
        self.summands.iter().all(|(s, _)| s.is_rigid(spec))
    }

    /// Primary: the summands form a single Galois orbit with uniform
    /// multiplicity.
    pub fn is_primary(&self, spec: &GroupSpec) -> bool {
        let Some((base, m0)) = self.summands.first() else {
            return false;
        };
        let mut orbit = BTreeSet::new();
        for sigma in spec.galois().elements() {
            match base.conjugate(spec, sigma) {
                Ok(c) => {
                    orbit.insert(c.key(spec));
                }
                Err(_) => return false,
            }
        }
        let own: BTreeSet<String> =
            self.summands.iter().map(|(s, _)| s.key(spec)).collect();
        own == orbit && self.summands.iter().all(|(_, m)| m == m0)
    }

    /// Number of Galois group elements whose conjugate of the base
    /// summand is rigid.  Defined for primary candidates only; equals
    /// the group order iff the candidate is rigid.
    pub fn rigidity_index(&self, spec: &GroupSpec) -> Result<usize, SatakeError> {
        if !self.is_primary(spec) {
            return Err(SatakeError::NotPrimary);
        }
        let base = &self.summands[0].0;
        let mut count = 0;
        for sigma in spec.galois().elements() {
            if base.conjugate(spec, sigma)?.is_rigid(spec) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// The complete admissible list at a noncompact embedding, or a
/// dimension-bounded generator of compact objects at a compact one.
/// The trivial representation is always listed last.
pub fn enumerate_local_reps(
    spec: &GroupSpec,
    emb: EmbIdx,
    compact_dim_bound: u64,
) -> Vec<LocalKind> {
    let factor = spec.factor_of(emb);
    let mut out = Vec::new();
    match spec.sig(emb) {
        Signature::Unitary { q, .. } if q >= 2 => out.push(LocalKind::StdPlusContra),
        Signature::Unitary { p, q } if q == 1 => {
            let mut k = 1;
            while 2 * k < p + 1 {
                out.push(LocalKind::WedgePair(k));
                k += 1;
            }
            if 2 * k == p + 1 {
                if p % 4 == 1 {
                    out.push(LocalKind::WedgeMiddleSingle(k));
                } else {
                    out.push(LocalKind::WedgeMiddleDouble(k));
                }
            }
        }
        Signature::Split => out.push(match factor.satake_type {
            SatakeType::II => LocalKind::TwoCopiesStd,
            SatakeType::III => LocalKind::Std,
            t => unreachable!("split signature at type {t}"),
        }),
        Signature::Lorentz { p } => match p % 8 {
            1 | 3 => out.push(LocalKind::SpinSingle),
            5 | 7 => out.push(LocalKind::SpinDouble),
            2 => {
                out.push(LocalKind::HalfSpin(Chirality::Plus));
                out.push(LocalKind::HalfSpin(Chirality::Minus));
            }
            6 => {
                out.push(LocalKind::HalfSpinDouble(Chirality::Plus));
                out.push(LocalKind::HalfSpinDouble(Chirality::Minus));
            }
            0 | 4 => out.push(LocalKind::BothHalfSpins),
            _ => unreachable!(),
        },
        Signature::Unitary { .. } | Signature::Compact => {
            // Compact embedding: exterior powers, plus spinor modules
            // for type IV, all filtered by the dimension bound.
            let s = factor.std_dim();
            let kmax = match factor.satake_type {
                SatakeType::I => factor.n - 1,
                _ => s / 2,
            };
            for k in 1..=kmax {
                let kind = LocalKind::CompactWedge(k);
                if kind.real_dim(factor) <= compact_dim_bound {
                    out.push(kind);
                }
            }
            if factor.satake_type == SatakeType::IV {
                let shapes: &[SpinShape] = if s % 2 == 1 {
                    &[SpinShape::Full]
                } else {
                    &[
                        SpinShape::Half(Chirality::Plus),
                        SpinShape::Half(Chirality::Minus),
                    ]
                };
                for &shape in shapes {
                    let kind = LocalKind::CompactSpin(shape);
                    if kind.real_dim(factor) <= compact_dim_bound {
                        out.push(kind);
                    }
                }
            }
        }
    }
    out.push(LocalKind::Trivial);
    out
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
    fn local_lists_match_the_table() {
        let spec = sec6_like();
        let b1 = spec.find_emb("b1").unwrap();
        assert_eq!(
            enumerate_local_reps(&spec, b1, u64::MAX),
            vec![
                LocalKind::WedgePair(1),
                LocalKind::WedgePair(2),
                LocalKind::WedgeMiddleSingle(3),
                LocalKind::Trivial
            ]
        );
        let a1 = spec.find_emb("a1").unwrap();
        assert_eq!(
            enumerate_local_reps(&spec, a1, u64::MAX),
            vec![LocalKind::WedgeMiddleSingle(1), LocalKind::Trivial]
        );
        let a2 = spec.find_emb("a2").unwrap();
        assert_eq!(
            enumerate_local_reps(&spec, a2, u64::MAX),
            vec![LocalKind::CompactWedge(1), LocalKind::Trivial]
        );
    }

    #[test]
    fn spin_residues_choose_kinds() {
        for (p, expect) in [
            (1u32, vec![LocalKind::SpinSingle]),
            (3, vec![LocalKind::SpinSingle]),
            (5, vec![LocalKind::SpinDouble]),
            (7, vec![LocalKind::SpinDouble]),
            (
                10,
                vec![
                    LocalKind::HalfSpin(Chirality::Plus),
                    LocalKind::HalfSpin(Chirality::Minus),
                ],
            ),
            (
                6,
                vec![
                    LocalKind::HalfSpinDouble(Chirality::Plus),
                    LocalKind::HalfSpinDouble(Chirality::Minus),
                ],
            ),
            (4, vec![LocalKind::BothHalfSpins]),
            (8, vec![LocalKind::BothHalfSpins]),
        ] {
            let spec = parse_group_spec(&format!(
                "factor D type=IV n={p} embeddings=e sig(e)=({p},2)\n"
            ))
            .unwrap();
            let e = spec.find_emb("e").unwrap();
            let mut got = enumerate_local_reps(&spec, e, u64::MAX);
            assert_eq!(got.pop(), Some(LocalKind::Trivial));
            assert_eq!(got, expect, "p = {p}");
        }
    }

    #[test]
    fn realized_dimensions() {
        let spec = parse_group_spec(
            "factor U type=I n=6 embeddings=u sig(u)=(5,1)\n\
             factor V type=I n=5 embeddings=v sig(v)=(3,2)\n\
             factor W type=IV n=5 embeddings=w sig(w)=(5,2)\n\
             factor X type=IV n=10 embeddings=x sig(x)=(10,2)\n\
             factor Y type=II n=5 embeddings=y\n\
             factor Z type=III n=2 embeddings=z\n",
        )
        .unwrap();
        let f = |l: &str| spec.factor_of(spec.find_emb(l).unwrap());
        assert_eq!(LocalKind::WedgeMiddleSingle(3).real_dim(f("u")), 40);
        assert_eq!(LocalKind::WedgePair(1).real_dim(f("u")), 12);
        assert_eq!(LocalKind::StdPlusContra.real_dim(f("v")), 10);
        assert_eq!(LocalKind::SpinDouble.real_dim(f("w")), 16);
        assert_eq!(LocalKind::HalfSpin(Chirality::Plus).real_dim(f("x")), 64);
        assert_eq!(LocalKind::TwoCopiesStd.real_dim(f("y")), 20);
        assert_eq!(LocalKind::Std.real_dim(f("z")), 4);
    }

    #[test]
    fn admissibility_is_strict_table_membership() {
        let spec = sec6_like();
        let b1 = spec.find_emb("b1").unwrap();
        // stdpair needs q ≥ 2; at (5,1) the wedge objects rule.
        let err = check_admissible(&spec, b1, LocalKind::StdPlusContra).unwrap_err();
        assert!(err.to_string().contains("wedgepair(1)"), "{err}");
        assert!(check_admissible(&spec, b1, LocalKind::WedgePair(2)).is_ok());
        // k beyond the middle is inadmissible.
        assert!(check_admissible(&spec, b1, LocalKind::WedgePair(4)).is_err());
    }

    #[test]
    fn conjugation_transports_content() {
        let spec = sec6_like();
        let a1 = spec.find_emb("a1").unwrap();
        let a2 = spec.find_emb("a2").unwrap();
        let sigma = &spec.galois().elements()[1];
        let s = Summand::new(vec![Leg {
            emb: a1,
            kind: LocalKind::WedgeMiddleSingle(1),
        }]);
        let c = s.conjugate(&spec, sigma).unwrap();
        assert_eq!(
            c.legs(),
            &[Leg {
                emb: a2,
                kind: LocalKind::CompactWedge(1)
            }]
        );
        // And back again.
        let back = c.conjugate(&spec, sigma).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn deep_wedge_dies_at_noncompact_slot() {
        let spec = sec6_like();
        let b2 = spec.find_emb("b2").unwrap();
        let sigma = &spec.galois().elements()[1];
        let s = Summand::new(vec![Leg {
            emb: b2,
            kind: LocalKind::CompactWedge(4),
        }]);
        let err = s.conjugate(&spec, sigma).unwrap_err();
        assert!(matches!(err, SatakeError::IllegalConjugate { .. }));
    }

    #[test]
    fn stability_and_rigidity() {
        let spec = sec6_like();
        let a1 = spec.find_emb("a1").unwrap();
        let b1 = spec.find_emb("b1").unwrap();
        let b2 = spec.find_emb("b2").unwrap();
        let two_noncompact = Summand::new(vec![
            Leg {
                emb: a1,
                kind: LocalKind::WedgeMiddleSingle(1),
            },
            Leg {
                emb: b1,
                kind: LocalKind::WedgePair(1),
            },
        ]);
        assert!(!two_noncompact.is_stable(&spec));
        let mixed = Summand::new(vec![
            Leg {
                emb: a1,
                kind: LocalKind::WedgeMiddleSingle(1),
            },
            Leg {
                emb: b2,
                kind: LocalKind::CompactWedge(1),
            },
        ]);
        assert!(mixed.is_stable(&spec) && mixed.is_rigid(&spec));
        let compact_only = Summand::new(vec![Leg {
            emb: b2,
            kind: LocalKind::CompactWedge(1),
        }]);
        assert!(compact_only.is_stable(&spec) && !compact_only.is_rigid(&spec));
        // Trivial-summand candidate is stable but not rigid.
        let triv = Candidate::new(&spec, vec![(Summand::trivial(), 2)]);
        assert!(triv.is_stable(&spec));
        assert!(!triv.is_rigid(&spec));
    }

    #[test]
    fn rigidity_index_counts_group_elements() {
        let spec = sec6_like();
        let b1 = spec.find_emb("b1").unwrap();
        let b2 = spec.find_emb("b2").unwrap();
        // Diagonal summand: fixed by the swap, rigid for both elements.
        let diag = Summand::new(vec![
            Leg {
                emb: b1,
                kind: LocalKind::WedgePair(1),
            },
            Leg {
                emb: b2,
                kind: LocalKind::CompactWedge(1),
            },
        ]);
        let cand = Candidate::new(&spec, vec![(diag, 1)]);
        assert!(cand.is_galois_stable(&spec));
        assert!(cand.is_primary(&spec));
        assert_eq!(cand.rigidity_index(&spec).unwrap(), 2);
        assert!(cand.is_rigid(&spec));

        // Single-leg orbit: only the element keeping the leg at b1 is rigid.
        let single = Summand::new(vec![Leg {
            emb: b1,
            kind: LocalKind::WedgePair(1),
        }]);
        let sigma = &spec.galois().elements()[1];
        let other = single.conjugate(&spec, sigma).unwrap();
        let cand = Candidate::new(&spec, vec![(single, 1), (other, 1)]);
        assert!(cand.is_galois_stable(&spec));
        assert_eq!(cand.rigidity_index(&spec).unwrap(), 1);
        assert!(!cand.is_rigid(&spec));
    }

    #[test]
    fn non_primary_candidates_are_rejected() {
        let spec = sec6_like();
        let a1 = spec.find_emb("a1").unwrap();
        let b1 = spec.find_emb("b1").unwrap();
        let s1 = Summand::new(vec![Leg {
            emb: a1,
            kind: LocalKind::WedgeMiddleSingle(1),
        }]);
        let s1c = s1.conjugate(&spec, &spec.galois().elements()[1]).unwrap();
        let s2 = Summand::new(vec![Leg {
            emb: b1,
            kind: LocalKind::WedgePair(1),
        }]);
        let s2c = s2.conjugate(&spec, &spec.galois().elements()[1]).unwrap();
        let cand = Candidate::new(&spec, vec![(s1, 1), (s1c, 1), (s2, 1), (s2c, 1)]);
        assert!(cand.is_galois_stable(&spec));
        assert!(!cand.is_primary(&spec));
        assert_eq!(
            cand.rigidity_index(&spec).unwrap_err(),
            SatakeError::NotPrimary
        );
    }

    #[test]
    fn galois_stability_detects_motion() {
        let spec = sec6_like();
        let b1 = spec.find_emb("b1").unwrap();
        let lone = Summand::new(vec![Leg {
            emb: b1,
            kind: LocalKind::WedgePair(1),
        }]);
        let cand = Candidate::new(&spec, vec![(lone, 1)]);
        let err = cand.check_galois_stable(&spec).unwrap_err();
        assert!(matches!(err, SatakeError::NotGaloisStable { .. }));
    }

    #[test]
    fn h2_flags() {
        assert_eq!(
            LocalKind::StdPlusContra.h2_expected(Signature::Unitary { p: 2, q: 2 }),
            Some(true)
        );
        assert_eq!(
            LocalKind::StdPlusContra.h2_expected(Signature::Unitary { p: 3, q: 2 }),
            Some(false)
        );
        assert_eq!(
            LocalKind::WedgePair(1).h2_expected(Signature::Unitary { p: 5, q: 1 }),
            Some(false)
        );
        assert_eq!(
            LocalKind::WedgeMiddleSingle(3).h2_expected(Signature::Unitary { p: 5, q: 1 }),
            Some(true)
        );
        assert_eq!(
            LocalKind::CompactWedge(2).h2_expected(Signature::Compact),
            None
        );
    }
}
