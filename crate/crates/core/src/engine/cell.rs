use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{bisector_halfspace, CellKind, CellResult, Certificate, EngineError, Voronoi};
use crate::cone::FgCone;
use crate::linalg::orthogonal_complement;
use crate::polyhedron::{polar_polytope, HRep, HalfSpace, VRep};
use crate::scalar::{lex_cmp, Point, Scalar, Vector};
use crate::witness::positively_spans;

fn max_dist_sq(points: &[Point], p: &Point) -> Scalar {
    points.iter().map(|v| v.dist_sq(p)).max().unwrap_or_else(Scalar::zero)
}

fn bisectors(p: &Point, sites: &[Point]) -> Result<Vec<HalfSpace>, EngineError> {
    sites.iter().map(|q| bisector_halfspace(p, q)).collect()
}

/// Sites farther than this from `p` have bisectors containing the bounded
/// set `v`.
fn cutoff_sq(v: &VRep, p: &Point) -> Option<Scalar> {
    v.is_bounded()
        .then(|| &max_dist_sq(&v.vertices, p) * &Scalar::from_int(4))
}

/// `(d, e)` with `v = d / e`, `d` integral and `e > 0`.
fn integral(v: &Vector) -> (Vec<BigInt>, BigInt) {
    let e = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = v.iter().map(|c| c.numer() * (&e / c.denom())).collect();
    (d, e)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The vertices of a polytope relative to `p` over a common denominator, for
/// fast bisector containment tests without rational normalization.
struct Frame {
    den: BigInt,
    verts: Vec<Vec<BigInt>>,
}

impl Frame {
    fn new(v: &VRep, p: &Point) -> Option<Frame> {
        if !v.is_bounded() {
            return None;
        }
        let rel: Vec<Vector> = v.vertices.iter().map(|x| x - p).collect();
        let den = rel
            .iter()
            .flat_map(|x| x.iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let verts = rel
            .iter()
            .map(|x| x.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        Some(Frame { den, verts })
    }

    /// Whether the polytope lies in the bisector half-space of `p` and `p + d`.
    fn within_bisector(&self, d: &Vector) -> bool {
        // <v/den, di/e> <= |di|^2 / (2 e^2)  <=>  2 e <v, di> <= den |di|^2
        let (di, e) = integral(d);
        let rhs = &self.den * dot(&di, &di);
        let e2 = e * 2;
        self.verts.iter().all(|v| &e2 * dot(v, &di) <= rhs)
    }
}

/// A cell cut down to its necessary constraints.
struct Reduced {
    sites: Vec<Point>,
    hrep: HRep,
    vrep: VRep,
    extra_kept: usize,
}

/// Intersects the bisectors of `p` against `candidates` and the `extra`
/// half-spaces, keeping a minimal subsystem.
///
/// Candidates are visited nearest first and a bisector is only added when
/// the current polyhedron pokes out of it. `seeds` are sites whose bisectors
/// are known to be useful early on (they bound the set quickly). The result
/// lists site bisectors in lexicographic site order, then surviving extras.
/// Candidates within `checked_sq` of `p` are skipped: the caller has already
/// tested them against a superset of the starting polyhedron. Without
/// `minimal` the kept constraints may include redundant ones.
fn reduce(
    p: &Point,
    candidates: &[Point],
    seeds: &[Point],
    extra: &[HalfSpace],
    checked_sq: Option<&Scalar>,
    minimal: bool,
) -> Result<Reduced, EngineError> {
    let dim = p.dim();
    let mut order: Vec<(Scalar, &Point)> = candidates
        .iter()
        .filter(|q| *q != p)
        .map(|q| (q.dist_sq(p), q))
        .filter(|(d, _)| checked_sq.is_none_or(|c| d > c))
        .collect();
    order.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| lex_cmp(a.1, b.1)));

    let mut kept: Vec<Point> = seeds.iter().filter(|q| *q != p).cloned().collect();
    kept.sort();
    kept.dedup();
    let mut current = HRep::new(dim, extra.to_vec())?;
    for q in &kept {
        current.push(bisector_halfspace(p, q)?);
    }
    let seeded = kept.len();
    let mut vrep = current.to_vrep();
    let mut cutoff = cutoff_sq(&vrep, p);
    let mut frame = Frame::new(&vrep, p);
    for (d, q) in order {
        if cutoff.as_ref().is_some_and(|c| &d > c) {
            break;
        }
        if kept[..seeded].binary_search(q).is_ok() {
            continue;
        }
        let inside = match &frame {
            Some(f) => f.within_bisector(&(q - p)),
            None => vrep.within(&bisector_halfspace(p, q)?),
        };
        if !inside {
            current.push(bisector_halfspace(p, q)?);
            kept.push(q.clone());
            vrep = current.to_vrep();
            cutoff = cutoff_sq(&vrep, p);
            frame = Frame::new(&vrep, p);
        }
    }

    kept.sort();
    let cut = Reduced {
        sites: kept,
        hrep: current,
        vrep,
        extra_kept: extra.len(),
    };
    if minimal {
        minimize(p, cut, extra)
    } else {
        Ok(cut)
    }
}

/// Drops the redundant constraints of a cut, listing site bisectors in
/// lexicographic order followed by the surviving `extra` half-spaces.
fn minimize(p: &Point, cut: Reduced, extra: &[HalfSpace]) -> Result<Reduced, EngineError> {
    let dim = p.dim();
    let Reduced {
        sites: kept, vrep, ..
    } = cut;
    // sites come first so that a bisector coinciding with an extra facet is
    // the one dropped
    let mut all = bisectors(p, &kept)?;
    all.extend(extra.iter().cloned());
    let full = HRep::new(dim, all)?;
    let keep = full.irredundant_indices_with(&vrep);
    let mut sites = Vec::new();
    let mut hs = Vec::new();
    let mut extra_kept = 0;
    for i in keep {
        if i < kept.len() {
            sites.push(kept[i].clone());
        } else {
            extra_kept += 1;
        }
        hs.push(full.halfspaces()[i].clone());
    }
    let hrep = HRep::new(dim, hs)?;
    debug_assert!(!vrep.lines.is_empty() || hrep.to_vrep() == vrep);
    Ok(Reduced {
        sites,
        hrep,
        vrep,
        extra_kept,
    })
}

impl Voronoi<'_> {
    /// Polytope cell of an inner site from a witness with `p` interior to
    /// `conv(witness)`.
    pub fn cell_inner(&self, p: &Point, witness: &[Point]) -> Result<CellResult, EngineError> {
        self.require_member(p)?;
        let dirs: Vec<Vector> = witness.iter().map(|w| w - p).collect();
        if !positively_spans(&dirs, p.dim()) {
            return Err(EngineError::InvalidWitness);
        }
        // B = m C + p with C the polar of conv(w - p)
        let polar = polar_polytope(&VRep::from_points(dirs.clone())?)?;
        let m = dirs
            .iter()
            .map(|d| d.norm_sq() * Scalar::ratio(1, 2))
            .max()
            .expect("witness is nonempty");
        let bound = HRep::new(
            p.dim(),
            polar
                .halfspaces()
                .iter()
                .map(|h| HalfSpace::new(h.normal().clone(), h.offset() * &m))
                .collect::<Result<Vec<_>, _>>()?,
        )?
        .translated(p);
        let bound_v = bound.to_vrep();
        debug_assert!(bound_v.is_bounded());
        let bound_sq = max_dist_sq(&bound_v.vertices, p);
        let bound_radius_sq = &bound_sq * &Scalar::from_int(4);
        // Any bounded superset of V(p) gives a valid cutoff, and the cells
        // cut by nearer sites are much smaller than B. Grow the scanned ball
        // until the cutoff of the cell found so far lies inside it.
        let mut radius_sq = max_dist_sq(witness, p);
        let mut seeds = witness.to_vec();
        let mut checked: Option<Scalar> = None;
        let (r, candidate_radius_sq) = loop {
            if radius_sq > bound_radius_sq {
                radius_sq = bound_radius_sq.clone();
            }
            let candidates = self.ball(p, &radius_sq)?;
            let r = reduce(p, &candidates, &seeds, &[], checked.as_ref(), false)?;
            let need = cutoff_sq(&r.vrep, p).expect("witness bisectors bound the cell");
            if need <= radius_sq {
                break (minimize(p, r, &[])?, need);
            }
            let grown = &radius_sq * &Scalar::from_int(16);
            checked = Some(radius_sq.clone());
            radius_sq = if need < grown { need } else { grown };
            seeds = r.sites;
        };
        assert!(r.vrep.is_bounded(), "inner cell must be bounded");
        assert!(
            r.vrep.vertices.iter().all(|v| bound.contains(v)),
            "inner cell must lie in the bounding polytope"
        );
        Ok(CellResult {
            kind: CellKind::Polytope,
            site: p.clone(),
            hrep: Some(r.hrep),
            vrep: Some(r.vrep),
            relevant_points: r.sites,
            recession: Some(FgCone::zero(p.dim())),
            certificate: Certificate::Inner {
                witness: witness.to_vec(),
                bound_sq,
                candidate_radius_sq,
            },
        })
    }

    /// Polyhedral cell of a boundary site whose direction cone is generated
    /// by `witness_points - p`.
    pub fn cell_boundary(&self, p: &Point, witness_points: &[Point]) -> Result<CellResult, EngineError> {
        self.require_member(p)?;
        let dim = p.dim();
        for w in witness_points {
            if w == p || !self.src.contains_point(w)? {
                return Err(EngineError::HintWitnessNotMember(w.clone()));
            }
        }
        let dirs: Vec<Vector> = witness_points.iter().map(|w| w - p).collect();
        let cone = FgCone::new(dim, dirs.clone())?;

        // work inside aff(C(p) + p), where the bisector intersection is line-free
        let mut h = HRep::new(dim, bisectors(p, witness_points)?)?;
        for c in orthogonal_complement(&dirs, dim) {
            let off = c.dot(p);
            h.push(HalfSpace::new(c.clone(), off.clone())?);
            h.push(HalfSpace::new(-&c, -off)?);
        }
        let h_v = h.to_vrep();
        if !h_v.lines.is_empty() {
            return Err(EngineError::InconsistentHint(format!(
                "bisector intersection contains the line {}",
                h_v.lines[0]
            )));
        }
        let s_double_prime_sq = max_dist_sq(&h_v.vertices, p);

        let translated_cone = VRep {
            dim,
            vertices: alloc::vec![p.clone()],
            rays: dirs.clone(),
            lines: Vec::new(),
        }
        .to_hrep();
        let q_v = h.intersect(&translated_cone).to_vrep();
        if !q_v.is_bounded() {
            let d = q_v.rays.first().or(q_v.lines.first()).expect("unbounded");
            return Err(EngineError::InconsistentHint(format!(
                "bisector intersection is unbounded in direction {d} of the cone"
            )));
        }
        let s_prime_sq = max_dist_sq(&q_v.vertices, p);
        let s_sq = if s_prime_sq > s_double_prime_sq {
            s_prime_sq.clone()
        } else {
            s_double_prime_sq.clone()
        };
        let candidate_radius_sq = &s_sq * &Scalar::from_int(4);
        let candidates = self.ball(p, &candidate_radius_sq)?;
        for q in candidates.iter().filter(|q| *q != p) {
            if !cone.contains(&(q - p)) {
                return Err(EngineError::InconsistentHint(format!(
                    "{q} is a point of the source outside the declared direction cone"
                )));
            }
        }

        let r = reduce(p, &candidates, witness_points, &[], None, true)?;
        let recession = if r.hrep.is_empty() {
            HRep::whole_space(dim)
        } else {
            r.hrep.recession_cone()?
        };
        if !recession.same_set(&cone.polar()) {
            return Err(EngineError::InconsistentHint(alloc::string::String::from(
                "recession cone of the cell differs from the polar of the declared cone",
            )));
        }
        let kind = if r.vrep.is_bounded() {
            CellKind::Polytope
        } else {
            CellKind::Polyhedron
        };
        let recession = FgCone::new(dim, r.vrep.recession_generators())?;
        Ok(CellResult {
            kind,
            site: p.clone(),
            hrep: Some(r.hrep),
            vrep: Some(r.vrep),
            relevant_points: r.sites,
            recession: Some(recession),
            certificate: Certificate::Boundary {
                witness_points: witness_points.to_vec(),
                s_prime_sq,
                s_double_prime_sq,
                candidate_radius_sq,
            },
        })
    }

    /// `V(p)` intersected with a bounded `window` that has `p` in its
    /// interior. Needs no classification and no hints.
    pub fn cell_truncated(&self, p: &Point, window: &HRep) -> Result<CellResult, EngineError> {
        self.require_member(p)?;
        if window.dim() != p.dim() {
            return Err(crate::polyhedron::GeometryError::DimensionMismatch {
                expected: p.dim(),
                found: window.dim(),
            }
            .into());
        }
        if !window.halfspaces().iter().all(|h| h.strictly_contains(p)) {
            return Err(EngineError::OutsideWindow);
        }
        let window_v = window.to_vrep();
        if !window_v.is_bounded() {
            return Err(EngineError::UnboundedWindow);
        }
        let half_diagonal_sq = max_dist_sq(&window_v.vertices, p);
        let candidate_radius_sq = &half_diagonal_sq * &Scalar::from_int(4);
        let candidates = self.ball(p, &candidate_radius_sq)?;
        let r = reduce(p, &candidates, &[], window.halfspaces(), None, true)?;
        Ok(CellResult {
            kind: CellKind::Truncated,
            site: p.clone(),
            hrep: Some(r.hrep),
            vrep: Some(r.vrep),
            relevant_points: r.sites,
            recession: Some(FgCone::zero(p.dim())),
            certificate: Certificate::Truncated {
                window: window.clone(),
                half_diagonal_sq,
                candidate_radius_sq,
                window_facets_kept: r.extra_kept,
            },
        })
    }
}
