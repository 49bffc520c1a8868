//! Finitely generated cones with apex at the origin.

use alloc::vec::Vec;

use crate::lp;
use crate::polyhedron::{GeometryError, HRep, HalfSpace};
use crate::scalar::{Scalar, Vector};
use crate::witness::positively_spans;

/// `{ sum lambda_i g_i : lambda_i >= 0 }`. No generators means `{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgCone {
    dim: usize,
    generators: Vec<Vector>,
}

impl FgCone {
    /// Zero generators are dropped.
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(FgCone { dim, generators })
    }

    pub fn zero(dim: usize) -> Self {
        FgCone {
            dim,
            generators: Vec::new(),
        }
    }

    /// Generator form of a cone given by inequalities `<a_i, y> <= 0`.
    pub fn from_hrep(h: &HRep) -> Self {
        let v = h.to_vrep();
        debug_assert!(v.vertices.iter().all(Vector::is_zero) || v.vertices.is_empty());
        FgCone {
            dim: h.dim(),
            generators: v.recession_generators(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn contains(&self, v: &Vector) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension");
        if v.is_zero() {
            return true;
        }
        lp::nonneg_combination(&self.generators, v).is_some()
    }

    /// `C* = {y : <g, y> <= 0 for every generator g}`.
    pub fn polar(&self) -> HRep {
        let hs = self
            .generators
            .iter()
            .map(|g| HalfSpace::new(g.clone(), Scalar::zero()).expect("generators are nonzero"))
            .collect();
        HRep::new(self.dim, hs).expect("generator dimensions checked")
    }

    /// `A ⊆ B` iff `B* ⊆ A*`, checked on the rays and lines of `B*`.
    pub fn is_subset_of(&self, other: &FgCone) -> bool {
        assert_eq!(self.dim, other.dim, "dimension");
        let v = other.polar().to_vrep();
        self.generators.iter().all(|g| {
            v.rays.iter().all(|y| !g.dot(y).is_positive())
                && v.lines.iter().all(|l| g.dot(l).is_zero())
        })
    }

    /// Same set, by mutual containment.
    pub fn equals(&self, other: &FgCone) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Whether the cone is all of `Q^dim`, i.e. its polar is `{0}`.
    pub fn is_fullspace(&self) -> bool {
        positively_spans(&self.generators, self.dim)
    }

    /// A canonical nonzero element of the polar cone: the sum of its extreme
    /// rays (interior when the polar is full-dimensional), otherwise a
    /// lineality direction, scaled to a primitive integer vector. `None` when
    /// the cone is the whole space.
    pub fn polar_direction(&self) -> Option<Vector> {
        let v = self.polar().to_vrep();
        let sum = v
            .rays
            .iter()
            .fold(Vector::zeros(self.dim), |acc, r| &acc + &r.primitive());
        if !sum.is_zero() {
            return Some(sum.primitive());
        }
        v.lines.first().map(Vector::primitive)
    }
}
