//! Half-spaces, H- and V-representations, and the polyhedral operations on
//! them: conversion, redundancy removal, strict feasibility, hulls, polars,
//! recession cones and lineality spaces.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dd::cone_generators;
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::scalar::{Point, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    DimensionMismatch { expected: usize, found: usize },
    ZeroDimension,
    ZeroNormal,
    EmptyInput,
    EmptySet,
    NotAPolytope,
    OriginNotInterior,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            GeometryError::ZeroDimension => f.write_str("ambient dimension must be positive"),
            GeometryError::ZeroNormal => f.write_str("half-space normal must be nonzero"),
            GeometryError::EmptyInput => f.write_str("point list is empty"),
            GeometryError::EmptySet => f.write_str("the set is empty"),
            GeometryError::NotAPolytope => f.write_str("input has rays or lines"),
            GeometryError::OriginNotInterior => {
                f.write_str("origin is not an interior point of the polytope")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// `{x : <normal, x> <= offset}` with a nonzero normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    normal: Vector,
    offset: Scalar,
}

impl HalfSpace {
    pub fn new(normal: Vector, offset: Scalar) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Slack `offset - <normal, x>`; nonnegative iff `x` is inside.
    pub fn slack(&self, x: &Point) -> Scalar {
        &self.offset - &self.normal.dot(x)
    }

    pub fn contains(&self, x: &Point) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn strictly_contains(&self, x: &Point) -> bool {
        self.slack(x).is_positive()
    }

    /// Same half-space up to a positive rescaling of `(normal, offset)`.
    pub fn same_set(&self, other: &HalfSpace) -> bool {
        // compare via the first nonzero normal coordinate
        let Some(i) = self.normal.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        if other.normal[i].is_zero() {
            return false;
        }
        let t = &other.normal[i] / &self.normal[i];
        t.is_positive() && self.normal.scale(&t) == other.normal && &self.offset * &t == other.offset
    }

    /// Offset set to zero.
    pub fn homogenized(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: Scalar::zero(),
        }
    }

    /// The image of this half-space under `x -> x + t`.
    pub fn translated(&self, t: &Vector) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: &self.offset + &self.normal.dot(t),
        }
    }

    /// Rescaled so the normal is a primitive integer vector.
    pub fn normalized(&self) -> HalfSpace {
        let p = self.normal.primitive();
        let i = p.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let t = &p[i] / &self.normal[i];
        HalfSpace {
            normal: p,
            offset: &self.offset * &t,
        }
    }
}

impl fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {}", self.normal, self.offset)
    }
}

/// Intersection of finitely many half-spaces. No half-spaces means all of
/// `Q^dim`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRep {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

/// `conv(vertices) + cone(rays) + span(lines)`; empty when there are no
/// vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub rays: Vec<Vector>,
    pub lines: Vec<Vector>,
}

impl HRep {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        Ok(HRep { dim, halfspaces })
    }

    /// All of `Q^dim`.
    pub fn whole_space(dim: usize) -> Self {
        HRep {
            dim,
            halfspaces: Vec::new(),
        }
    }

    /// A canonical infeasible system.
    pub fn empty_set(dim: usize) -> Self {
        let e = Vector::unit(dim, 0);
        HRep {
            dim,
            halfspaces: vec![
                HalfSpace::new(e.clone(), Scalar::zero()).unwrap(),
                HalfSpace::new(-&e, -Scalar::one()).unwrap(),
            ],
        }
    }

    /// The axis-aligned box `[lo, hi]`.
    pub fn axis_box(lo: &Point, hi: &Point) -> Result<Self, GeometryError> {
        if lo.dim() != hi.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: lo.dim(),
                found: hi.dim(),
            });
        }
        let dim = lo.dim();
        let mut hs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = Vector::unit(dim, i);
            hs.push(HalfSpace::new(-&e, -&lo[i])?);
            hs.push(HalfSpace::new(e, hi[i].clone())?);
        }
        HRep::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn push(&mut self, h: HalfSpace) {
        assert_eq!(h.dim(), self.dim, "half-space dimension");
        self.halfspaces.push(h);
    }

    pub fn intersect(&self, other: &HRep) -> HRep {
        assert_eq!(self.dim, other.dim, "dimension");
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        HRep {
            dim: self.dim,
            halfspaces: hs,
        }
    }

    pub fn translated(&self, t: &Vector) -> HRep {
        HRep {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(|h| h.translated(t)).collect(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    fn constraint_refs(&self, skip: Option<usize>) -> Vec<(&Vector, &Scalar)> {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, h)| (&h.normal, &h.offset))
            .collect()
    }

    /// Maximizes `<objective, x>` over the set.
    pub fn maximize(&self, objective: &Vector) -> LpOutcome {
        lp::maximize(self.dim, objective, &self.constraint_refs(None))
    }

    /// Some point of the set, if it is nonempty.
    pub fn feasible_point(&self) -> Option<Point> {
        match self.maximize(&Vector::zeros(self.dim)) {
            LpOutcome::Optimal { x, .. } => Some(Vector::new(x)),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// A point satisfying every inequality strictly, if one exists.
    pub fn feasible_interior(&self) -> Option<Point> {
        if self.halfspaces.is_empty() {
            return Some(Vector::zeros(self.dim));
        }
        let n = self.dim;
        let lifted: Vec<(Vector, Scalar)> = self
            .halfspaces
            .iter()
            .map(|h| {
                let mut c = h.normal.coords().to_vec();
                c.push(Scalar::one());
                (Vector::new(c), h.offset.clone())
            })
            .chain(core::iter::once((Vector::unit(n + 1, n), Scalar::one())))
            .collect();
        let refs: Vec<(&Vector, &Scalar)> = lifted.iter().map(|(a, b)| (a, b)).collect();
        match lp::maximize(n + 1, &Vector::unit(n + 1, n), &refs) {
            LpOutcome::Optimal { x, value } if value.is_positive() => {
                let mut x = x;
                x.truncate(n);
                let x = Vector::new(x);
                debug_assert!(self.halfspaces.iter().all(|h| h.strictly_contains(&x)));
                Some(x)
            }
            _ => None,
        }
    }

    /// Whether half-space `i` is implied by the others.
    pub fn is_redundant(&self, i: usize) -> bool {
        let h = &self.halfspaces[i];
        match lp::maximize(self.dim, &h.normal, &self.constraint_refs(Some(i))) {
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => false,
            LpOutcome::Optimal { value, .. } => value <= h.offset,
        }
    }

    /// Indices of a minimal subsystem denoting the same set. Half-spaces are
    /// examined in order; each one implied by the survivors is dropped.
    pub fn irredundant_indices(&self) -> Vec<usize> {
        let mut alive: Vec<usize> = (0..self.halfspaces.len()).collect();
        let mut k = 0;
        while k < alive.len() {
            let i = alive[k];
            let h = &self.halfspaces[i];
            let others: Vec<(&Vector, &Scalar)> = alive
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| (&self.halfspaces[j].normal, &self.halfspaces[j].offset))
                .collect();
            let redundant = match lp::maximize(self.dim, &h.normal, &others) {
                LpOutcome::Infeasible => true,
                LpOutcome::Unbounded => false,
                LpOutcome::Optimal { value, .. } => value <= h.offset,
            };
            if redundant {
                alive.remove(k);
            } else {
                k += 1;
            }
        }
        alive
    }

    /// As [`irredundant_indices`](Self::irredundant_indices), given the
    /// V-representation `v` of the same set. For pointed full-dimensional
    /// sets a half-space is kept iff the generators tight on it span a
    /// facet, and of several identical half-spaces the last one is kept.
    /// Otherwise falls back to linear programming.
    pub fn irredundant_indices_with(&self, v: &VRep) -> Vec<usize> {
        let n = self.dim;
        let pointed = !v.vertices.is_empty() && v.lines.is_empty();
        let spread = |vs: &[&Point], rs: &[&Vector]| -> usize {
            let Some(v0) = vs.first() else { return 0 };
            let mut dirs: Vec<Vector> = vs[1..].iter().map(|x| *x - *v0).collect();
            dirs.extend(rs.iter().map(|r| (*r).clone()));
            linalg::rank(&dirs, n)
        };
        let all_v: Vec<&Point> = v.vertices.iter().collect();
        let all_r: Vec<&Vector> = v.rays.iter().collect();
        if !pointed || spread(&all_v, &all_r) < n {
            return self.irredundant_indices();
        }
        let hs = &self.halfspaces;
        (0..hs.len())
            .filter(|&i| {
                let h = &hs[i];
                let tv: Vec<&Point> = v.vertices.iter().filter(|x| h.slack(x).is_zero()).collect();
                let tr: Vec<&Vector> = v.rays.iter().filter(|r| h.normal.dot(r).is_zero()).collect();
                !tv.is_empty()
                    && spread(&tv, &tr) + 1 == n
                    && !hs[i + 1..].iter().any(|g| g.same_set(h))
            })
            .collect()
    }

    /// Same set, with every remaining half-space necessary.
    pub fn remove_redundant(&self) -> HRep {
        let keep = self.irredundant_indices();
        HRep {
            dim: self.dim,
            halfspaces: keep.into_iter().map(|i| self.halfspaces[i].clone()).collect(),
        }
    }

    /// `self ⊆ other` as point sets.
    pub fn is_subset_of(&self, other: &HRep) -> bool {
        assert_eq!(self.dim, other.dim, "dimension");
        if !self.is_feasible() {
            return true;
        }
        other.halfspaces.iter().all(|h| match self.maximize(&h.normal) {
            LpOutcome::Optimal { value, .. } => value <= h.offset,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => true,
        })
    }

    pub fn same_set(&self, other: &HRep) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// The homogenized system `{x : <a_i, x> <= 0}`.
    pub fn recession_cone(&self) -> Result<HRep, GeometryError> {
        if !self.is_feasible() {
            return Err(GeometryError::EmptySet);
        }
        Ok(HRep {
            dim: self.dim,
            halfspaces: self.halfspaces.iter().map(HalfSpace::homogenized).collect(),
        })
    }

    /// Basis of the lineality space `{v : <a_i, v> = 0}` of a nonempty set.
    pub fn lineality_space(&self) -> Vec<Vector> {
        let normals: Vec<Vector> = self.halfspaces.iter().map(|h| h.normal.clone()).collect();
        linalg::kernel(&normals, self.dim)
    }

    /// Vertices, extreme rays and a lineality basis.
    pub fn to_vrep(&self) -> VRep {
        let n = self.dim;
        let mut rows = Vec::with_capacity(self.halfspaces.len() + 1);
        rows.push(Vector::unit(n + 1, 0));
        for h in &self.halfspaces {
            let mut c = Vec::with_capacity(n + 1);
            c.push(h.offset.clone());
            c.extend(h.normal.iter().map(|a| -a));
            rows.push(Vector::new(c));
        }
        let gens = cone_generators(n + 1, &rows);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for g in gens.rays {
            let t = g[0].clone();
            let tail: Vector = g.coords()[1..].iter().cloned().collect();
            if t.is_zero() {
                rays.push(tail.primitive());
            } else {
                vertices.push(tail.scale(&t.recip().unwrap()));
            }
        }
        if vertices.is_empty() {
            return VRep::empty(n);
        }
        let lines: Vec<Vector> = gens
            .lines
            .into_iter()
            .map(|l| {
                debug_assert!(l[0].is_zero());
                Vector::new(l.coords()[1..].to_vec()).primitive()
            })
            .collect();
        vertices.sort();
        rays.sort();
        VRep {
            dim: n,
            vertices,
            rays,
            lines,
        }
    }
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self, GeometryError> {
        let dim = points.first().ok_or(GeometryError::EmptyInput)?.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(VRep {
            dim,
            vertices: points,
            rays: Vec::new(),
            lines: Vec::new(),
        })
    }

    pub fn is_empty_set(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    /// Whether the whole set lies in `h`.
    pub fn within(&self, h: &HalfSpace) -> bool {
        self.vertices.iter().all(|v| h.contains(v))
            && self.rays.iter().all(|r| !h.normal.dot(r).is_positive())
            && self.lines.iter().all(|l| h.normal.dot(l).is_zero())
    }

    /// A valid inequality description of the same set.
    pub fn to_hrep(&self) -> HRep {
        let n = self.dim;
        if self.vertices.is_empty() {
            return HRep::empty_set(n);
        }
        let lift = |t: Scalar, v: &Vector| {
            let mut c = Vec::with_capacity(n + 1);
            c.push(t);
            c.extend(v.iter().cloned());
            Vector::new(c)
        };
        let mut gens: Vec<Vector> = Vec::new();
        gens.extend(self.vertices.iter().map(|v| lift(Scalar::one(), v)));
        gens.extend(self.rays.iter().map(|r| lift(Scalar::zero(), r)));
        for l in &self.lines {
            gens.push(lift(Scalar::zero(), l));
            gens.push(lift(Scalar::zero(), &-l));
        }
        // facets of cone(gens) are the generators of its dual cone
        let dual = cone_generators(n + 1, &gens);
        let mut hs = Vec::new();
        let mut push = |h: &Vector| {
            let normal: Vector = h.coords()[1..].iter().map(|a| -a).collect();
            if !normal.is_zero() {
                hs.push(HalfSpace {
                    normal,
                    offset: h[0].clone(),
                });
            }
        };
        for r in &dual.rays {
            push(r);
        }
        for l in &dual.lines {
            push(l);
            push(&-l);
        }
        HRep { dim: n, halfspaces: hs }
    }

    /// `rays ∪ ±lines`, the generators of the recession cone.
    pub fn recession_generators(&self) -> Vec<Vector> {
        let mut g = self.rays.clone();
        for l in &self.lines {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }
}

/// Both representations of `conv(points)`; the V-representation lists
/// exactly the extreme points, in lexicographic order.
pub fn convex_hull(points: &[Point]) -> Result<(HRep, VRep), GeometryError> {
    let v = VRep::from_points(points.to_vec())?;
    if v.dim == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    let h = v.to_hrep();
    let extreme = h.to_vrep();
    debug_assert!(extreme.is_bounded());
    Ok((h, extreme))
}

/// `K* = {x : <x, y_i> <= 1}` over the extreme points `y_i` of a polytope
/// `K` with the origin in its interior.
pub fn polar_polytope(v: &VRep) -> Result<HRep, GeometryError> {
    if !v.is_bounded() {
        return Err(GeometryError::NotAPolytope);
    }
    if v.vertices.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let (hull, extreme) = convex_hull(&v.vertices)?;
    if !hull.halfspaces.iter().all(|h| h.offset.is_positive()) {
        return Err(GeometryError::OriginNotInterior);
    }
    let hs = extreme
        .vertices
        .iter()
        .map(|y| HalfSpace::new(y.clone(), Scalar::one()))
        .collect::<Result<Vec<_>, _>>()?;
    HRep::new(v.dim, hs)
}
