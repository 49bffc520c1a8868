//! The JSON source-spec format.
//!
//! ```json
//! { "dimension": 2,
//!   "parts": [ {"kind": "finite", "points": [["1", "0"]]},
//!              {"kind": "family", "index": "z", "range": "integers",
//!               "coords": ["0", "z"], "growth": {"c": "1", "d": "0"}} ],
//!   "hints": [ {"at": ["1", "0"], "kind": "not_closed",
//!               "limit_direction": ["0", "1"], "witness_part": 0} ] }
//! ```
//!
//! `index` may also be a list of names for families indexed by `Z^m`; the
//! growth bound then uses the max-norm of the index vector.

use lazyvor_core::{
    ConeHint, Expr, Family, IndexRange, Point, PointSource, Scalar, SourceError, SourcePart, Vector,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{context}: {msg}")]
    Invalid { context: String, msg: String },
    #[error(transparent)]
    Source(#[from] SourceError),
}

fn invalid(context: impl Into<String>, msg: impl ToString) -> SpecError {
    SpecError::Invalid {
        context: context.into(),
        msg: msg.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    dimension: usize,
    parts: Vec<PartDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    hints: Vec<HintDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PartDoc {
    Finite {
        points: Vec<Vec<String>>,
    },
    Family {
        index: IndexDoc,
        range: RangeDoc,
        coords: Vec<String>,
        growth: GrowthDoc,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IndexDoc {
    One(String),
    Many(Vec<String>),
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum RangeDoc {
    Integers,
    Nonneg,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GrowthDoc {
    c: String,
    d: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum HintDoc {
    FinitelyGenerated {
        at: Vec<String>,
        witness_points: Vec<Vec<String>>,
    },
    NotClosed {
        at: Vec<String>,
        limit_direction: Vec<String>,
        witness_part: usize,
    },
}

pub fn parse_scalar(s: &str, context: &str) -> Result<Scalar, SpecError> {
    s.parse().map_err(|e| invalid(context, e))
}

fn parse_point(coords: &[String], context: &str) -> Result<Point, SpecError> {
    coords
        .iter()
        .map(|c| parse_scalar(c, context))
        .collect::<Result<Vec<_>, _>>()
        .map(Vector::new)
}

fn scalar_strings(v: &Vector) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Parses and validates a source spec.
pub fn parse_source(text: &str) -> Result<PointSource, SpecError> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let mut parts = Vec::new();
    for (i, part) in doc.parts.iter().enumerate() {
        let ctx = format!("part {i}");
        parts.push(match part {
            PartDoc::Finite { points } => SourcePart::Finite(
                points
                    .iter()
                    .map(|p| parse_point(p, &ctx))
                    .collect::<Result<_, _>>()?,
            ),
            PartDoc::Family {
                index,
                range,
                coords,
                growth,
            } => {
                let vars = match index {
                    IndexDoc::One(v) => vec![v.clone()],
                    IndexDoc::Many(v) => v.clone(),
                };
                let coords = coords
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        Expr::parse(c, &vars).map_err(|e| invalid(format!("{ctx}, coordinate {k}"), e))
                    })
                    .collect::<Result<_, _>>()?;
                SourcePart::Family(Family {
                    vars,
                    range: match range {
                        RangeDoc::Integers => IndexRange::Integers,
                        RangeDoc::Nonneg => IndexRange::NonNegative,
                    },
                    coords,
                    growth_c: parse_scalar(&growth.c, &ctx)?,
                    growth_d: parse_scalar(&growth.d, &ctx)?,
                })
            }
        });
    }
    let mut hints = Vec::new();
    for (i, hint) in doc.hints.iter().enumerate() {
        let ctx = format!("hint {i}");
        hints.push(match hint {
            HintDoc::FinitelyGenerated { at, witness_points } => (
                parse_point(at, &ctx)?,
                ConeHint::FinitelyGenerated {
                    witness_points: witness_points
                        .iter()
                        .map(|p| parse_point(p, &ctx))
                        .collect::<Result<_, _>>()?,
                },
            ),
            HintDoc::NotClosed {
                at,
                limit_direction,
                witness_part,
            } => (
                parse_point(at, &ctx)?,
                ConeHint::NotClosed {
                    limit_direction: parse_point(limit_direction, &ctx)?,
                    witness_part: *witness_part,
                },
            ),
        });
    }
    Ok(PointSource::new(doc.dimension, parts, hints)?)
}

/// The spec text of a source, pretty-printed with a trailing newline.
pub fn render_source(src: &PointSource) -> String {
    let parts = src
        .parts()
        .iter()
        .map(|p| match p {
            SourcePart::Finite(points) => PartDoc::Finite {
                points: points.iter().map(scalar_strings).collect(),
            },
            SourcePart::Family(f) => PartDoc::Family {
                index: match f.vars.as_slice() {
                    [one] => IndexDoc::One(one.clone()),
                    many => IndexDoc::Many(many.to_vec()),
                },
                range: match f.range {
                    IndexRange::Integers => RangeDoc::Integers,
                    IndexRange::NonNegative => RangeDoc::Nonneg,
                },
                coords: f.coords.iter().map(|e| e.render(&f.vars)).collect(),
                growth: GrowthDoc {
                    c: f.growth_c.to_string(),
                    d: f.growth_d.to_string(),
                },
            },
        })
        .collect();
    let hints = src
        .hints()
        .iter()
        .map(|(at, h)| match h {
            ConeHint::FinitelyGenerated { witness_points } => HintDoc::FinitelyGenerated {
                at: scalar_strings(at),
                witness_points: witness_points.iter().map(scalar_strings).collect(),
            },
            ConeHint::NotClosed {
                limit_direction,
                witness_part,
            } => HintDoc::NotClosed {
                at: scalar_strings(at),
                limit_direction: scalar_strings(limit_direction),
                witness_part: *witness_part,
            },
        })
        .collect();
    let doc = SpecDoc {
        dimension: src.dim(),
        parts,
        hints,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("spec serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lazyvor_core::presets;

    const P1: &str = r#"{
        "dimension": 2,
        "parts": [
            {"kind": "family", "index": "z", "range": "integers",
             "coords": ["0", "z"], "growth": {"c": "1", "d": "0"}},
            {"kind": "finite", "points": [["1", "0"]]}
        ],
        "hints": [{"at": ["1", "0"], "kind": "not_closed",
                   "limit_direction": ["0", "1"], "witness_part": 0}]
    }"#;

    #[test]
    fn parses_p1() {
        let src = parse_source(P1).unwrap();
        assert_eq!(src.parts().len(), 2);
        assert_eq!(src, presets::p1());
    }

    #[test]
    fn presets_roundtrip() {
        for name in presets::NAMES {
            let src = presets::by_name(name).unwrap();
            assert_eq!(parse_source(&render_source(&src)).unwrap(), src, "{name}");
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_source("{\n  \"dimension\": 2,\n  \"parts\": [,]\n}").unwrap_err();
        let SpecError::Syntax { line, column, .. } = err else { panic!("{err}") };
        assert_eq!((line, column), (3, 13));
    }

    #[test]
    fn expression_errors_name_the_coordinate() {
        let text = P1.replace("[\"0\", \"z\"]", "[\"0\", \"1 - / z\"]");
        let err = parse_source(&text).unwrap_err().to_string();
        assert!(err.contains("part 0, coordinate 1"), "{err}");
        assert!(err.contains("column 5"), "{err}");
    }

    #[test]
    fn validation_errors() {
        let bad_growth = P1.replace("\"c\": \"1\"", "\"c\": \"0\"");
        assert!(matches!(
            parse_source(&bad_growth),
            Err(SpecError::Source(SourceError::NonPositiveGrowth { part: 0 }))
        ));
        let bad_dim = P1.replace("[[\"1\", \"0\"]]", "[[\"1\", \"0\", \"0\"]]");
        assert!(matches!(
            parse_source(&bad_dim),
            Err(SpecError::Source(SourceError::DimensionMismatch { .. }))
        ));
        let bad_hint = P1.replace("\"at\": [\"1\", \"0\"]", "\"at\": [\"1\", \"1\"]");
        assert!(matches!(parse_source(&bad_hint), Err(SpecError::Source(_))));
        let violated = P1.replace("\"coords\": [\"0\", \"z\"]", "\"coords\": [\"0\", \"z / 2\"]");
        assert!(matches!(
            parse_source(&violated),
            Err(SpecError::Source(SourceError::GrowthViolated { .. }))
        ));
    }
}
