//! Parsing of canonical candidate keys:
//! `factor:embedding:kind(params)` legs joined by `⊗` within a summand,
//! summands joined by `⊕`, `*m` multiplicity suffix.

use super::{Candidate, Chirality, Leg, LocalKind, SatakeError, SpinShape, Summand};
use crate::spec::GroupSpec;

pub fn parse_candidate_key(spec: &GroupSpec, key: &str) -> Result<Candidate, SatakeError> {
    let bad = |msg: String| SatakeError::BadKey(msg);
    let key = key.trim();
    if key.is_empty() {
        return Err(bad("empty key".into()));
    }
    let mut parts: Vec<(Summand, u32)> = Vec::new();
    for part in key.split('⊕') {
        let part = part.trim();
        let (body, mult) = match part.rsplit_once('*') {
            Some((b, m)) => {
                let mult: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad multiplicity `{m}` in `{part}`")))?;
                if mult == 0 {
                    return Err(bad(format!("zero multiplicity in `{part}`")));
                }
                (b.trim(), mult)
            }
            None => (part, 1),
        };
        if body == "triv" {
            parts.push((Summand::trivial(), mult));
            continue;
        }
        let mut legs = Vec::new();
        for leg in body.split('⊗') {
            let leg = leg.trim();
            let fields: Vec<&str> = leg.split(':').collect();
            let [factor_name, emb_label, token] = fields.as_slice() else {
                return Err(bad(format!(
                    "leg `{leg}` must read `factor:embedding:kind`"
                )));
            };
            let emb = spec
                .find_emb(emb_label)
                .ok_or_else(|| bad(format!("unknown embedding `{emb_label}`")))?;
            let actual = &spec.factor_of(emb).name;
            if actual != factor_name {
                return Err(bad(format!(
                    "embedding `{emb_label}` belongs to factor `{actual}`, \
                     not `{factor_name}`"
                )));
            }
            let kind = parse_kind_token(token)
                .ok_or_else(|| bad(format!("unknown kind token `{token}`")))?;
            legs.push(Leg { emb, kind });
        }
        parts.push((Summand::new(legs), mult));
    }
    Ok(Candidate::new(spec, parts))
}

fn parse_kind_token(token: &str) -> Option<LocalKind> {
    let (name, arg) = match token.split_once('(') {
        Some((n, rest)) => (n, Some(rest.strip_suffix(')')?)),
        None => (token, None),
    };
    let chir = |a: &str| match a {
        "+" => Some(Chirality::Plus),
        "-" => Some(Chirality::Minus),
        _ => None,
    };
    let index = |a: &str| a.parse::<u32>().ok();
    match (name, arg) {
        ("stdpair", None) => Some(LocalKind::StdPlusContra),
        ("wedgepair", Some(a)) => Some(LocalKind::WedgePair(index(a)?)),
        ("wmid", Some(a)) => Some(LocalKind::WedgeMiddleSingle(index(a)?)),
        ("wmid2", Some(a)) => Some(LocalKind::WedgeMiddleDouble(index(a)?)),
        ("std2", None) => Some(LocalKind::TwoCopiesStd),
        ("std", None) => Some(LocalKind::Std),
        ("spin", None) => Some(LocalKind::SpinSingle),
        ("spin2", None) => Some(LocalKind::SpinDouble),
        ("hspin", Some(a)) => Some(LocalKind::HalfSpin(chir(a)?)),
        ("hspin2", Some(a)) => Some(LocalKind::HalfSpinDouble(chir(a)?)),
        ("spinboth", None) => Some(LocalKind::BothHalfSpins),
        ("cwedge", Some(a)) => Some(LocalKind::CompactWedge(index(a)?)),
        ("cspin", None) => Some(LocalKind::CompactSpin(SpinShape::Full)),
        ("cspin", Some(a)) => Some(LocalKind::CompactSpin(SpinShape::Half(chir(a)?))),
        ("cspinboth", None) => Some(LocalKind::CompactSpin(SpinShape::Both)),
        ("triv", None) => Some(LocalKind::Trivial),
        _ => None,
    }
}
