//! JSON renderings of engine results. Scalars are strings in `p/q` form.

use lazyvor_core::{
    CellResult, Certificate, Classification, ConeHint, FgCone, HRep, Scalar, VRep, Vector,
};
use serde_json::{json, Value};

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn vectors(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn hrep(h: &HRep) -> Value {
    Value::Array(
        h.halfspaces()
            .iter()
            .map(|g| json!({"normal": vector(g.normal()), "offset": scalar(g.offset())}))
            .collect(),
    )
}

pub fn vrep(v: &VRep) -> Value {
    json!({
        "vertices": vectors(&v.vertices),
        "rays": vectors(&v.rays),
        "lines": vectors(&v.lines),
    })
}

pub fn hint(h: &ConeHint) -> Value {
    match h {
        ConeHint::FinitelyGenerated { witness_points } => json!({
            "kind": "finitely_generated",
            "witness_points": vectors(witness_points),
        }),
        ConeHint::NotClosed {
            limit_direction,
            witness_part,
        } => json!({
            "kind": "not_closed",
            "limit_direction": vector(limit_direction),
            "witness_part": witness_part,
        }),
    }
}

fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::Inner {
            witness,
            bound_sq,
            candidate_radius_sq,
        } => json!({
            "type": "inner",
            "witness": vectors(witness),
            "bound_sq": scalar(bound_sq),
            "candidate_radius_sq": scalar(candidate_radius_sq),
        }),
        Certificate::Boundary {
            witness_points,
            s_prime_sq,
            s_double_prime_sq,
            candidate_radius_sq,
        } => json!({
            "type": "boundary",
            "witness_points": vectors(witness_points),
            "s_prime_sq": scalar(s_prime_sq),
            "s_double_prime_sq": scalar(s_double_prime_sq),
            "candidate_radius_sq": scalar(candidate_radius_sq),
        }),
        Certificate::NonPolyhedral { hint: h, evidence } => json!({
            "type": "non_polyhedral",
            "hint": hint(h),
            "evidence": evidence
                .iter()
                .map(|s| json!({
                    "radius_sq": scalar(&s.radius_sq),
                    "generators": s.generators,
                    "grew": s.grew,
                    "contains_limit": s.contains_limit,
                }))
                .collect::<Vec<_>>(),
        }),
        Certificate::Truncated {
            window,
            half_diagonal_sq,
            candidate_radius_sq,
            window_facets_kept,
        } => json!({
            "type": "truncated",
            "window": hrep(window),
            "half_diagonal_sq": scalar(half_diagonal_sq),
            "candidate_radius_sq": scalar(candidate_radius_sq),
            "window_facets_kept": window_facets_kept,
        }),
        Certificate::Undetermined { radius_sq } => json!({
            "type": "undetermined",
            "radius_sq": scalar(radius_sq),
        }),
    }
}

pub fn cell(c: &CellResult) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "site": vector(&c.site),
        "hrep": c.hrep.as_ref().map(hrep),
        "vrep": c.vrep.as_ref().map(vrep),
        "relevant_points": vectors(&c.relevant_points),
        "recession_generators": c.recession.as_ref().map(|r| vectors(r.generators())),
        "certificate": certificate(&c.certificate),
    })
}

pub fn classification(c: &Classification) -> Value {
    match c {
        Classification::Inner { witness } => json!({"kind": "inner", "witness": vectors(witness)}),
        Classification::Boundary { support } => json!({"kind": "boundary", "support": vector(support)}),
        Classification::Undetermined { radius_sq } => {
            json!({"kind": "undetermined", "radius_sq": scalar(radius_sq)})
        }
    }
}

/// A scanned direction cone, with an optional comparison against a second,
/// larger radius.
pub fn cone(
    point: &Vector,
    radius_sq: &Scalar,
    scan: &FgCone,
    stabilized: Option<(&Scalar, &FgCone, bool)>,
) -> Value {
    let mut v = json!({
        "point": vector(point),
        "radius_sq": scalar(radius_sq),
        "generators": vectors(scan.generators()),
        "fullspace": scan.is_fullspace(),
    });
    if let Some((r2, larger, same)) = stabilized {
        v["stabilization"] = json!({
            "radius_sq": scalar(r2),
            "generators": vectors(larger.generators()),
            "stabilized": same,
        });
    }
    v
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
