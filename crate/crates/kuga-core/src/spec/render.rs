//! Canonical text rendering.  Parsing the rendered text reproduces the
//! same specification, and two specifications are interchangeable iff
//! their renderings are byte-identical: factors sorted by name,
//! embedding labels sorted, generator cycles canonicalized, LF endings.

use super::perm::Perm;
use super::{GroupSpec, SatakeType, Signature};

pub fn render_group_spec(spec: &GroupSpec) -> String {
    let mut out = String::new();
    for f in spec.factors() {
        out.push_str(&format!(
            "factor {} type={} n={} embeddings={}",
            f.name,
            f.satake_type,
            f.n,
            f.embeddings
                .iter()
                .map(|&e| spec.label(e))
                .collect::<Vec<_>>()
                .join(",")
        ));
        for &e in &f.embeddings {
            let rendered = match (f.satake_type, spec.sig(e)) {
                (SatakeType::I, Signature::Unitary { p, q }) => Some(format!("({p},{q})")),
                (SatakeType::II | SatakeType::III, Signature::Split) => None,
                (SatakeType::II | SatakeType::III, Signature::Compact) => {
                    Some("compact".to_string())
                }
                (SatakeType::IV, Signature::Lorentz { p }) => Some(format!("({p},2)")),
                (SatakeType::IV, Signature::Compact) => Some(format!("({},0)", f.n + 2)),
                (t, s) => unreachable!("signature {s:?} cannot occur at type {t}"),
            };
            if let Some(r) = rendered {
                out.push_str(&format!(" sig({})={r}", spec.label(e)));
            }
        }
        out.push('\n');
    }
    let mut gen_lines: Vec<String> = spec
        .galois()
        .generators()
        .iter()
        .map(|g| render_perm(spec, g))
        .collect();
    gen_lines.sort();
    gen_lines.dedup();
    for g in gen_lines {
        out.push_str(&format!("galois perm={g}\n"));
    }
    out
}

fn render_perm(spec: &GroupSpec, p: &Perm) -> String {
    // Perm::cycles already yields least-first cycles sorted by first
    // element, and embedding indices are sorted by label, so index order
    // is label order.
    p.cycles()
        .into_iter()
        .map(|c| {
            let labels: Vec<&str> = c.iter().map(|&i| spec.label(i)).collect();
            format!("({})", labels.join(" "))
        })
        .collect::<Vec<_>>()
        .join("")
}
