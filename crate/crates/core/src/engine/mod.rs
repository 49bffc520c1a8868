//! Voronoi cells of single sites.
//!
//! The cell of `p` is the intersection of the bisector half-spaces
//! `{x : <x - p, q - p> <= ‖q - p‖² / 2}` over all other sites `q`. Only
//! finitely many of them can matter, and the work here is finding a radius
//! beyond which no site can be relevant:
//!
//! * inner sites (interior to the hull of the set) have polytope cells,
//!   bounded by a Steinitz witness;
//! * boundary sites with a finitely generated direction cone have polyhedral
//!   cells, with the candidate radius derived from the witness bisectors;
//! * boundary sites whose direction cone is not closed have non-polyhedral
//!   cells, reported with a certificate instead of an H-representation.

mod cell;
mod classify;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cone::FgCone;
use crate::polyhedron::{GeometryError, HRep, HalfSpace, VRep};
use crate::scalar::{Point, Scalar, Vector};
use crate::source::{ConeHint, PointSource, SourceError};

pub const DEFAULT_MAX_CANDIDATES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    Source(SourceError),
    Geometry(GeometryError),
    NotAMember(Point),
    CoincidentSites,
    InvalidWitness,
    HintWitnessNotMember(Point),
    InconsistentHint(String),
    OutsideWindow,
    UnboundedWindow,
    WrongResultKind(CellKind),
    RadiusOrder,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Source(e) => write!(f, "{e}"),
            EngineError::Geometry(e) => write!(f, "{e}"),
            EngineError::NotAMember(p) => write!(f, "{p} is not a point of the source"),
            EngineError::CoincidentSites => f.write_str("bisector of a point with itself"),
            EngineError::InvalidWitness => {
                f.write_str("witness hull does not contain the site in its interior")
            }
            EngineError::HintWitnessNotMember(p) => {
                write!(f, "hint witness {p} is not a point of the source")
            }
            EngineError::InconsistentHint(why) => write!(f, "inconsistent cone hint: {why}"),
            EngineError::OutsideWindow => {
                f.write_str("site is not strictly inside the truncation window")
            }
            EngineError::UnboundedWindow => f.write_str("truncation window is unbounded"),
            EngineError::WrongResultKind(k) => {
                write!(f, "operation needs a polytope or polyhedron, got {}", k.as_str())
            }
            EngineError::RadiusOrder => f.write_str("radii must satisfy r1 <= r2"),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<SourceError> for EngineError {
    fn from(e: SourceError) -> Self {
        EngineError::Source(e)
    }
}

impl From<GeometryError> for EngineError {
    fn from(e: GeometryError) -> Self {
        EngineError::Geometry(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Polytope,
    Polyhedron,
    NonPolyhedral,
    Truncated,
    Undetermined,
}

impl CellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CellKind::Polytope => "polytope",
            CellKind::Polyhedron => "polyhedron",
            CellKind::NonPolyhedral => "non_polyhedral",
            CellKind::Truncated => "truncated",
            CellKind::Undetermined => "undetermined",
        }
    }
}

/// One radius of the growing-cone evidence for a non-closed direction cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSample {
    pub radius_sq: Scalar,
    pub generators: usize,
    /// Strictly larger than the cone at the previous sample.
    pub grew: bool,
    pub contains_limit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Inner {
        witness: Vec<Point>,
        /// Squared radius of a ball around `p` containing the bounding polytope.
        bound_sq: Scalar,
        candidate_radius_sq: Scalar,
    },
    Boundary {
        witness_points: Vec<Point>,
        s_prime_sq: Scalar,
        s_double_prime_sq: Scalar,
        candidate_radius_sq: Scalar,
    },
    NonPolyhedral {
        hint: ConeHint,
        evidence: Vec<ScanSample>,
    },
    Truncated {
        window: HRep,
        half_diagonal_sq: Scalar,
        candidate_radius_sq: Scalar,
        window_facets_kept: usize,
    },
    Undetermined {
        radius_sq: Scalar,
    },
}

impl Certificate {
    pub fn candidate_radius_sq(&self) -> Option<&Scalar> {
        match self {
            Certificate::Inner {
                candidate_radius_sq,
                ..
            }
            | Certificate::Boundary {
                candidate_radius_sq,
                ..
            }
            | Certificate::Truncated {
                candidate_radius_sq,
                ..
            } => Some(candidate_radius_sq),
            _ => None,
        }
    }
}

/// The outcome of a cell computation.
///
/// For polytopes and polyhedra the H-representation is minimal and its
/// `i`-th half-space is the bisector of `p` and `relevant_points[i]`. For
/// truncated cells the site bisectors come first, followed by the window
/// facets that survived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellResult {
    pub kind: CellKind,
    pub site: Point,
    pub hrep: Option<HRep>,
    pub vrep: Option<VRep>,
    pub relevant_points: Vec<Point>,
    pub recession: Option<FgCone>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `p` is interior to the hull of the witness points.
    Inner { witness: Vec<Point> },
    /// Every known direction `q - p` has `<q - p, support> <= 0`.
    Boundary { support: Vector },
    /// No witness within the searched radius and nothing else to go on.
    Undetermined { radius_sq: Scalar },
}

/// `{x : <x - p, q - p> <= ‖q - p‖² / 2}`, written as
/// `<q - p, x> <= ‖q - p‖² / 2 + <p, q - p>`.
pub fn bisector_halfspace(p: &Point, q: &Point) -> Result<HalfSpace, EngineError> {
    if p == q {
        return Err(EngineError::CoincidentSites);
    }
    let d = q - p;
    let offset = &(d.norm_sq() * Scalar::ratio(1, 2)) + &p.dot(&d);
    Ok(HalfSpace::new(d, offset)?)
}

/// The Voronoi relevant sites of a polytope or polyhedron cell.
pub fn relevant_points(result: &CellResult) -> Result<&[Point], EngineError> {
    match result.kind {
        CellKind::Polytope | CellKind::Polyhedron => Ok(&result.relevant_points),
        k => Err(EngineError::WrongResultKind(k)),
    }
}

/// Cell computations against one point source.
#[derive(Debug, Clone, Copy)]
pub struct Voronoi<'a> {
    src: &'a PointSource,
    max_candidates: usize,
}

impl<'a> Voronoi<'a> {
    pub fn new(src: &'a PointSource) -> Self {
        Voronoi {
            src,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    /// Ball queries needing more than `limit` candidates fail instead of
    /// running.
    pub fn with_max_candidates(self, limit: usize) -> Self {
        Voronoi {
            max_candidates: limit,
            ..self
        }
    }

    pub fn source(&self) -> &PointSource {
        self.src
    }

    fn ball(&self, center: &Point, radius_sq: &Scalar) -> Result<Vec<Point>, EngineError> {
        Ok(self
            .src
            .points_in_ball_limited(center, radius_sq, Some(self.max_candidates))?)
    }

    fn require_member(&self, p: &Point) -> Result<(), EngineError> {
        if self.src.contains_point(p)? {
            Ok(())
        } else {
            Err(EngineError::NotAMember(p.clone()))
        }
    }

    /// `cone(q - p)` over the sites `q != p` within squared radius `radius_sq`.
    pub fn direction_cone_scan(&self, p: &Point, radius_sq: &Scalar) -> Result<FgCone, EngineError> {
        let dirs = self
            .ball(p, radius_sq)?
            .iter()
            .filter(|q| *q != p)
            .map(|q| q - p)
            .collect();
        Ok(FgCone::new(self.src.dim(), dirs)?)
    }

    /// Whether the scanned cone is the same at both radii. `true` is evidence
    /// of finite generation, not proof.
    pub fn cone_stabilized(&self, p: &Point, r1: &Scalar, r2: &Scalar) -> Result<bool, EngineError> {
        if r1 > r2 {
            return Err(EngineError::RadiusOrder);
        }
        let a = self.direction_cone_scan(p, r1)?;
        let b = self.direction_cone_scan(p, r2)?;
        Ok(a.equals(&b))
    }

    /// Dispatches on the classification of `p`.
    pub fn cell(&self, p: &Point, max_radius_sq: &Scalar) -> Result<CellResult, EngineError> {
        self.require_member(p)?;
        match self.classify(p, max_radius_sq)? {
            Classification::Inner { witness } => self.cell_inner(p, &witness),
            Classification::Undetermined { radius_sq } => Ok(CellResult {
                kind: CellKind::Undetermined,
                site: p.clone(),
                hrep: None,
                vrep: None,
                relevant_points: Vec::new(),
                recession: None,
                certificate: Certificate::Undetermined { radius_sq },
            }),
            Classification::Boundary { .. } => match self.src.hint_at(p) {
                Some(ConeHint::FinitelyGenerated { witness_points }) => {
                    self.cell_boundary(p, witness_points)
                }
                Some(hint @ ConeHint::NotClosed { .. }) => {
                    self.non_polyhedral(p, hint, max_radius_sq)
                }
                None => {
                    // only finite sources classify as boundary without a hint
                    let all = self.src.finite_points().expect("finite source");
                    let others: Vec<Point> = all.into_iter().filter(|q| q != p).collect();
                    self.cell_boundary(p, &others)
                }
            },
        }
    }

    fn non_polyhedral(
        &self,
        p: &Point,
        hint: &ConeHint,
        max_radius_sq: &Scalar,
    ) -> Result<CellResult, EngineError> {
        let ConeHint::NotClosed {
            limit_direction, ..
        } = hint
        else {
            unreachable!("called with a not-closed hint");
        };
        let mut evidence = Vec::new();
        let mut prev: Option<FgCone> = None;
        let mut r = Scalar::from_int(4);
        while &r <= max_radius_sq && evidence.len() < 8 {
            let cone = self.direction_cone_scan(p, &r)?;
            let contains_limit = cone.contains(limit_direction);
            if contains_limit {
                return Err(EngineError::InconsistentHint(alloc::format!(
                    "limit direction {limit_direction} is in the scanned cone at squared radius {r}"
                )));
            }
            let grew = prev.as_ref().is_none_or(|c| !c.equals(&cone));
            evidence.push(ScanSample {
                radius_sq: r.clone(),
                generators: cone.generators().len(),
                grew,
                contains_limit,
            });
            prev = Some(cone);
            r = &r * &Scalar::from_int(4);
        }
        Ok(CellResult {
            kind: CellKind::NonPolyhedral,
            site: p.clone(),
            hrep: None,
            vrep: None,
            relevant_points: Vec::new(),
            recession: None,
            certificate: Certificate::NonPolyhedral {
                hint: hint.clone(),
                evidence,
            },
        })
    }
}

#[cfg(test)]
mod tests;
