//! Exact Voronoi cells of discrete, possibly infinite, point sets.
//!
//! Point sets are oracles answering "which points lie in this closed ball".
//! From that alone the engine classifies a site as inner or boundary, builds
//! its cell as a polytope or polyhedron with a provable candidate radius, or
//! certifies that the cell is not polyhedral. All arithmetic is over `Q`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cone;
pub mod dd;
pub mod engine;
pub mod expr;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod presets;
pub mod scalar;
pub mod source;
pub mod witness;

pub use cone::FgCone;
pub use engine::{
    bisector_halfspace, relevant_points, CellKind, CellResult, Certificate, Classification,
    EngineError, ScanSample, Voronoi, DEFAULT_MAX_CANDIDATES,
};
pub use expr::Expr;
pub use polyhedron::{convex_hull, polar_polytope, GeometryError, HRep, HalfSpace, VRep};
pub use scalar::{lex_cmp, Point, Scalar, Vector};
pub use source::{ConeHint, Family, IndexRange, PointSource, SourceError, SourcePart};
pub use witness::{caratheodory_witness, steinitz_witness, Witness};
