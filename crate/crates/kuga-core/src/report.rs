//! Verification reports: schema-stable JSON with sorted keys and
//! 12-significant-digit floats, a shipped structural schema with a
//! validator, a human-readable rendering, and the plain-text matrix
//! dump format.
//!
//! Reports carry no timestamps or machine identifiers, so two runs
//! over the same inputs emit byte-identical documents.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::hcond::Tolerances;
use crate::linalg::{Mat, C64};
use crate::pipeline::CandidateOutcome;
use crate::spec::GroupSpec;

/// Structural schema every emitted report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../assets/report.schema.json");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("report violates the shipped schema at {path}: {reason}")]
    Schema { path: String, reason: String },
}

/// Run metadata; everything here is derived from the invocation, never
/// from the clock or the machine.
#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
    /// `"exact"` or `"float"`.
    pub mode: String,
    pub pass_tolerance: f64,
    pub failure_floor: f64,
    /// Dimension bound of a classification run (`null` for single-
    /// candidate verification).
    pub max_dim: Option<u64>,
}

impl ToolInfo {
    pub fn new(exact: bool, tols: Tolerances, max_dim: Option<u64>) -> Self {
        ToolInfo {
            name: "kuga".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            mode: if exact { "exact" } else { "float" }.to_string(),
            pass_tolerance: tols.pass,
            failure_floor: tols.fail_floor,
            max_dim,
        }
    }
}

/// One real-equivalence class of candidates, keyed by the
/// signature-erased family key.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub family: String,
    /// Key of the member with the least (dimension, key).
    pub minimal_key: String,
    pub minimal_real_dim: u64,
    /// Number of candidates in the class.
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// Canonical rendering of the input group.
    pub spec: String,
    pub tool: ToolInfo,
    /// Families are real-equivalence classes; distinct rational forms
    /// of one class are never listed separately.
    pub equivalence_note: String,
    /// Families of the listed candidates, sorted by minimal dimension
    /// then family key.
    pub families: Vec<FamilySummary>,
    /// Certified candidates in enumeration order (dimension, key).
    pub candidates: Vec<CandidateOutcome>,
    /// Conjunction of the per-candidate verdicts.
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(spec: &GroupSpec, tool: ToolInfo, candidates: Vec<CandidateOutcome>) -> Self {
        let mut groups: BTreeMap<&str, Vec<&CandidateOutcome>> = BTreeMap::new();
        for c in &candidates {
            groups.entry(c.family.as_str()).or_default().push(c);
        }
        let mut families: Vec<FamilySummary> = groups
            .into_iter()
            .map(|(family, members)| {
                let minimal = members
                    .iter()
                    .min_by_key(|c| (c.real_dim, c.key.as_str()))
                    .expect("a family group is never empty");
                FamilySummary {
                    family: family.to_string(),
                    minimal_key: minimal.key.clone(),
                    minimal_real_dim: minimal.real_dim,
                    members: members.len(),
                }
            })
            .collect();
        families.sort_by(|a, b| {
            (a.minimal_real_dim, &a.family).cmp(&(b.minimal_real_dim, &b.family))
        });
        let pass = candidates.iter().all(|c| c.pass);
        VerificationReport {
            spec: spec.canonical_text(),
            tool,
            equivalence_note: "families are real-equivalence classes; rational forms of one \
                               family are not listed separately"
                .to_string(),
            families,
            candidates,
            pass,
        }
    }
}

/// Round to 12 significant digits so reports do not depend on the
/// printing quirks of full-precision floats.
fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific notation round-trips")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked is_f64");
            if let Some(rounded) = serde_json::Number::from_f64(round_significant(x)) {
                *v = Value::Number(rounded);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Serialize a report to canonical JSON: keys sorted, floats at 12
/// significant digits, trailing newline.
pub fn to_canonical_json(report: &VerificationReport) -> Result<String, ReportError> {
    let mut value = serde_json::to_value(report)?;
    round_floats(&mut value);
    validate_schema(&schema_value(), &value, "$").map_err(|(path, reason)| {
        ReportError::Schema { path, reason }
    })?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

fn schema_value() -> Value {
    serde_json::from_str(REPORT_SCHEMA).expect("the shipped schema is valid JSON")
}

/// Structural validation against the subset of JSON Schema the shipped
/// schema uses: `type` (string or list), `enum`, `properties`,
/// `required`, `additionalProperties: false`, and `items`.
pub fn validate_schema(
    schema: &Value,
    instance: &Value,
    path: &str,
) -> Result<(), (String, String)> {
    let fail = |reason: String| Err((path.to_string(), reason));

    if let Some(allowed) = schema.get("enum") {
        let list = allowed.as_array().expect("enum lists its values");
        if !list.contains(instance) {
            return fail(format!("value {instance} not among {allowed}"));
        }
    }

    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|t| t.as_str()).collect(),
            _ => vec![],
        };
        let matches = |name: &str| match name {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "number" => instance.is_number(),
            "integer" => instance.is_i64() || instance.is_u64(),
            "boolean" => instance.is_boolean(),
            "null" => instance.is_null(),
            other => panic!("schema names unknown type `{other}`"),
        };
        if !names.iter().any(|n| matches(n)) {
            return fail(format!("expected type {names:?}"));
        }
        // Nullable objects skip the object-shape checks when null.
        if instance.is_null() {
            return Ok(());
        }
    }

    if let Some(obj) = instance.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return fail(format!("missing required key `{key}`"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if props.is_none_or(|p| !p.contains_key(key)) {
                    return fail(format!("unexpected key `{key}`"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(child) = obj.get(key) {
                    validate_schema(sub, child, &format!("{path}.{key}"))?;
                }
            }
        }
    }

    if let (Some(items), Some(arr)) = (schema.get("items"), instance.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            validate_schema(items, child, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}

/// Re-check the headline invariant on a finished report: a candidate
/// marked PASS has every required residual within the pass tolerance
/// and a strictly positive certified eigenvalue.
pub fn check_pass_invariant(report: &VerificationReport) -> Result<(), String> {
    let tol = report.tool.pass_tolerance;
    for c in report.candidates.iter().filter(|c| c.pass) {
        let mut residuals: Vec<(String, f64)> = vec![
            ("form alternating".into(), c.form.alternating_residual),
            ("form symmetry".into(), c.form.symmetry_residual),
            ("form j_square".into(), c.form.j_square_residual),
            ("form invariance".into(), c.form.invariance_residual),
            ("form full_h1".into(), c.form.full_h1_residual),
        ];
        for b in &c.blocks {
            for l in &b.legs {
                if let Some(h) = &l.h {
                    residuals.push((format!("{}/{} h1", b.element, l.label), h.h1_residual));
                    residuals.push((format!("{}/{} lemma", b.element, l.label), h.lemma_residual));
                    if h.h2_pass {
                        residuals.push((format!("{}/{} h2", b.element, l.label), h.h2_residual));
                    }
                }
                if let Some(inv) = &l.j_invariance {
                    residuals.push((
                        format!("{}/{} gamma coordinate", b.element, l.label),
                        inv.coordinate_residual,
                    ));
                    residuals.push((
                        format!("{}/{} gamma alternating", b.element, l.label),
                        inv.alternating_residual,
                    ));
                    residuals.push((
                        format!("{}/{} gamma generator", b.element, l.label),
                        inv.generator_residual,
                    ));
                }
            }
        }
        for (name, r) in residuals {
            if !(r <= tol) {
                return Err(format!(
                    "candidate `{}` is marked PASS but residual {name} = {r:.3e} exceeds {tol:.3e}",
                    c.key
                ));
            }
        }
        if !(c.form.min_eig > 0.0) {
            return Err(format!(
                "candidate `{}` is marked PASS but min_eig = {:.3e} is not positive",
                c.key, c.form.min_eig
            ));
        }
    }
    Ok(())
}

/// Human-readable summary of a report.
pub fn render_markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# Verification report ({} mode, tolerance {:.1e})\n\n",
        report.tool.mode, report.tool.pass_tolerance
    ));
    if let Some(d) = report.tool.max_dim {
        out.push_str(&format!("Dimension bound: {d}\n\n"));
    }
    out.push_str(&format!(
        "Overall: **{}** — {} candidate(s) in {} family(ies)\n\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.candidates.len(),
        report.families.len()
    ));
    if !report.families.is_empty() {
        out.push_str("| family | minimal candidate | dim | members |\n");
        out.push_str("|---|---|---|---|\n");
        for f in &report.families {
            out.push_str(&format!(
                "| `{}` | `{}` | {} | {} |\n",
                f.family, f.minimal_key, f.minimal_real_dim, f.members
            ));
        }
        out.push('\n');
    }
    for c in &report.candidates {
        out.push_str(&format!(
            "- `{}` dim {} ×{}: {}, rigidity index {}/{}{}; N = {}, min eig {:.3e}\n",
            c.key,
            c.real_dim,
            c.multiplicity,
            if c.pass { "PASS" } else { "FAIL" },
            c.rigidity_index,
            c.group_order,
            if c.rigid_input {
                String::new()
            } else {
                format!(
                    " (made rigid in {} round(s), restriction multiple {})",
                    c.trail.len(),
                    c.restriction_multiple
                        .map_or_else(|| "?".to_string(), |m| m.to_string())
                )
            },
            c.form.n_used,
            c.form.min_eig
        ));
    }
    out
}

fn format_complex(z: &C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Plain-text matrix dump: a `rows <r> cols <c> field C` header line,
/// then one line per row of `a+bi` entries.
pub fn matrix_dump(m: &Mat<C64>) -> String {
    let mut out = format!("rows {} cols {} field C\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format_complex(m.at(r, c))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
