//! Discrete point sets given as oracles: finite lists and integer-indexed
//! families, with a declared growth bound so that every ball query is a
//! finite scan.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::FgCone;
use crate::expr::Expr;
use crate::scalar::{Point, Scalar, Vector};

/// Indices checked against the growth bound when a family is loaded.
pub const SPOT_CHECK_RANGE: i64 = 1000;

/// Squared radii at which declared non-closed direction cones are sampled.
const HINT_SAMPLE_RADII_SQ: [i64; 5] = [4, 16, 64, 256, 1024];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexRange {
    /// All of `Z`.
    Integers,
    /// `{0, 1, 2, ...}`.
    NonNegative,
}

impl IndexRange {
    fn admits(self, k: &BigInt) -> bool {
        match self {
            IndexRange::Integers => true,
            IndexRange::NonNegative => !k.is_negative(),
        }
    }
}

/// `{ point(k) : k in range^m }` with `‖point(k)‖_∞ >= c ‖k‖_∞ - d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub vars: Vec<String>,
    pub range: IndexRange,
    pub coords: Vec<Expr>,
    pub growth_c: Scalar,
    pub growth_d: Scalar,
}

impl Family {
    pub fn point(&self, index: &[BigInt]) -> Result<Point, crate::expr::DivisionByZero> {
        self.coords.iter().map(|e| e.eval(index)).collect()
    }

    fn growth_holds(&self, index: &[BigInt], x: &Point) -> bool {
        let knorm = index.iter().map(|k| k.abs()).max().unwrap_or_default();
        x.max_abs() >= &(&self.growth_c * &Scalar::from_bigint(knorm)) - &self.growth_d
    }

    /// Calls `f` on every admissible index with `‖k‖_∞ <= bound`.
    fn for_each_index<E>(
        &self,
        bound: &BigInt,
        mut f: impl FnMut(&[BigInt]) -> Result<(), E>,
    ) -> Result<(), E> {
        let lo = match self.range {
            IndexRange::Integers => -bound.clone(),
            IndexRange::NonNegative => BigInt::zero(),
        };
        if bound < &lo {
            return Ok(());
        }
        let m = self.vars.len();
        let mut idx: Vec<BigInt> = (0..m).map(|_| lo.clone()).collect();
        loop {
            f(&idx)?;
            let mut i = m;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if &idx[i] < bound {
                    idx[i] += 1;
                    break;
                }
                idx[i] = lo.clone();
            }
        }
    }

    fn index_count(&self, bound: &BigInt) -> Option<u128> {
        let per: BigInt = match self.range {
            IndexRange::Integers => bound * 2 + 1,
            IndexRange::NonNegative => bound + 1,
        };
        let per = per.to_u128()?;
        (0..self.vars.len()).try_fold(1u128, |acc, _| acc.checked_mul(per))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourcePart {
    Finite(Vec<Point>),
    Family(Family),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeHint {
    /// `C(p) = cone(w - p : w in witness_points)`.
    FinitelyGenerated { witness_points: Vec<Point> },
    /// `C(p)` is not closed; `limit_direction` lies in its closure but not in
    /// it, approached by directions towards points of `witness_part`.
    NotClosed {
        limit_direction: Vector,
        witness_part: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceError {
    ZeroDimension,
    DimensionMismatch { expected: usize, found: usize },
    EmptySource,
    NoIndexVariables { part: usize },
    NonPositiveGrowth { part: usize },
    NegativeGrowthOffset { part: usize },
    NotTotal { part: usize, index: Vec<BigInt> },
    GrowthViolated { part: usize, index: Vec<BigInt> },
    NegativeRadius,
    TooManyCandidates { count: u128, limit: usize },
    HintNotMember { at: Point },
    HintWitnessNotMember { at: Point, witness: Point },
    HintWitnessIsBase { at: Point },
    ZeroLimitDirection { at: Point },
    BadWitnessPart { at: Point, part: usize },
    HintInconsistent { at: Point, radius_sq: Scalar },
}

fn fmt_index(f: &mut fmt::Formatter<'_>, index: &[BigInt]) -> fmt::Result {
    for (i, k) in index.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{k}")?;
    }
    Ok(())
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SourceError::*;
        match self {
            ZeroDimension => f.write_str("dimension must be positive"),
            DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            EmptySource => f.write_str("source has no points"),
            NoIndexVariables { part } => write!(f, "part {part}: family has no index variable"),
            NonPositiveGrowth { part } => write!(f, "part {part}: growth constant c must be > 0"),
            NegativeGrowthOffset { part } => {
                write!(f, "part {part}: growth offset d must be >= 0")
            }
            NotTotal { part, index } => {
                write!(f, "part {part}: coordinates undefined at index ")?;
                fmt_index(f, index)
            }
            GrowthViolated { part, index } => {
                write!(f, "part {part}: growth bound violated at index ")?;
                fmt_index(f, index)
            }
            NegativeRadius => f.write_str("squared radius must be nonnegative"),
            TooManyCandidates { count, limit } => {
                write!(f, "ball query needs {count} candidates, limit is {limit}")
            }
            HintNotMember { at } => write!(f, "hint point {at} is not in the source"),
            HintWitnessNotMember { at, witness } => {
                write!(f, "hint at {at}: witness {witness} is not in the source")
            }
            HintWitnessIsBase { at } => write!(f, "hint at {at}: witness equals the hinted point"),
            ZeroLimitDirection { at } => write!(f, "hint at {at}: limit direction is zero"),
            BadWitnessPart { at, part } => {
                write!(f, "hint at {at}: part {part} is not a family part")
            }
            HintInconsistent { at, radius_sq } => write!(
                f,
                "hint at {at}: limit direction lies in the scanned cone at squared radius {radius_sq}"
            ),
        }
    }
}

impl core::error::Error for SourceError {}

/// A discrete point set: the union of its parts, plus per-point hints about
/// direction cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSource {
    dim: usize,
    parts: Vec<SourcePart>,
    hints: Vec<(Point, ConeHint)>,
}

impl PointSource {
    /// Validates dimensions, growth bounds (spot-checked for indices up to
    /// [`SPOT_CHECK_RANGE`]) and hints.
    pub fn new(
        dim: usize,
        parts: Vec<SourcePart>,
        hints: Vec<(Point, ConeHint)>,
    ) -> Result<Self, SourceError> {
        if dim == 0 {
            return Err(SourceError::ZeroDimension);
        }
        let check_dim = |d: usize| {
            if d == dim {
                Ok(())
            } else {
                Err(SourceError::DimensionMismatch {
                    expected: dim,
                    found: d,
                })
            }
        };
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            match part {
                SourcePart::Finite(points) => {
                    for p in points.iter() {
                        check_dim(p.dim())?;
                    }
                    points.sort();
                    points.dedup();
                }
                SourcePart::Family(f) => {
                    check_dim(f.coords.len())?;
                    if f.vars.is_empty() {
                        return Err(SourceError::NoIndexVariables { part: i });
                    }
                    if !f.growth_c.is_positive() {
                        return Err(SourceError::NonPositiveGrowth { part: i });
                    }
                    if f.growth_d.is_negative() {
                        return Err(SourceError::NegativeGrowthOffset { part: i });
                    }
                    spot_check(i, f)?;
                }
            }
        }
        if parts.iter().all(|p| matches!(p, SourcePart::Finite(v) if v.is_empty())) {
            return Err(SourceError::EmptySource);
        }
        let src = PointSource {
            dim,
            parts,
            hints: Vec::new(),
        };
        for (at, hint) in &hints {
            src.check_hint(at, hint)?;
        }
        Ok(PointSource { hints, ..src })
    }

    fn check_hint(&self, at: &Point, hint: &ConeHint) -> Result<(), SourceError> {
        if at.dim() != self.dim {
            return Err(SourceError::DimensionMismatch {
                expected: self.dim,
                found: at.dim(),
            });
        }
        if !self.contains_point(at)? {
            return Err(SourceError::HintNotMember { at: at.clone() });
        }
        match hint {
            ConeHint::FinitelyGenerated { witness_points } => {
                for w in witness_points {
                    if w.dim() != self.dim {
                        return Err(SourceError::DimensionMismatch {
                            expected: self.dim,
                            found: w.dim(),
                        });
                    }
                    if w == at {
                        return Err(SourceError::HintWitnessIsBase { at: at.clone() });
                    }
                    if !self.contains_point(w)? {
                        return Err(SourceError::HintWitnessNotMember {
                            at: at.clone(),
                            witness: w.clone(),
                        });
                    }
                }
            }
            ConeHint::NotClosed {
                limit_direction,
                witness_part,
            } => {
                if limit_direction.dim() != self.dim {
                    return Err(SourceError::DimensionMismatch {
                        expected: self.dim,
                        found: limit_direction.dim(),
                    });
                }
                if limit_direction.is_zero() {
                    return Err(SourceError::ZeroLimitDirection { at: at.clone() });
                }
                if !matches!(self.parts.get(*witness_part), Some(SourcePart::Family(_))) {
                    return Err(SourceError::BadWitnessPart {
                        at: at.clone(),
                        part: *witness_part,
                    });
                }
                for r in HINT_SAMPLE_RADII_SQ {
                    let r = Scalar::from_int(r);
                    let dirs: Vec<Vector> = self
                        .points_in_ball(at, &r)?
                        .iter()
                        .map(|q| q - at)
                        .filter(|d| !d.is_zero())
                        .collect();
                    let cone = FgCone::new(self.dim, dirs).expect("dimensions checked");
                    if cone.contains(limit_direction) {
                        return Err(SourceError::HintInconsistent {
                            at: at.clone(),
                            radius_sq: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[SourcePart] {
        &self.parts
    }

    pub fn hints(&self) -> &[(Point, ConeHint)] {
        &self.hints
    }

    pub fn hint_at(&self, p: &Point) -> Option<&ConeHint> {
        self.hints.iter().find(|(at, _)| at == p).map(|(_, h)| h)
    }

    /// True when every part is a finite list.
    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(|p| matches!(p, SourcePart::Finite(_)))
    }

    /// All points of a finite source, sorted and duplicate-free.
    pub fn finite_points(&self) -> Option<Vec<Point>> {
        if !self.is_finite() {
            return None;
        }
        let mut all: Vec<Point> = self
            .parts
            .iter()
            .flat_map(|p| match p {
                SourcePart::Finite(v) => v.clone(),
                SourcePart::Family(_) => Vec::new(),
            })
            .collect();
        all.sort();
        all.dedup();
        Some(all)
    }

    /// Member points `x` with `‖x - center‖² <= radius_sq`, sorted.
    pub fn points_in_ball(&self, center: &Point, radius_sq: &Scalar) -> Result<Vec<Point>, SourceError> {
        self.points_in_ball_limited(center, radius_sq, None)
    }

    /// As [`points_in_ball`](Self::points_in_ball), failing once the number of
    /// scanned family indices or returned points exceeds `limit`.
    pub fn points_in_ball_limited(
        &self,
        center: &Point,
        radius_sq: &Scalar,
        limit: Option<usize>,
    ) -> Result<Vec<Point>, SourceError> {
        if center.dim() != self.dim {
            return Err(SourceError::DimensionMismatch {
                expected: self.dim,
                found: center.dim(),
            });
        }
        if radius_sq.is_negative() {
            return Err(SourceError::NegativeRadius);
        }
        let radius = Scalar::from_bigint(radius_sq.sqrt_ceil());
        let reach = &radius + &center.max_abs();
        let mut out: Vec<Point> = Vec::new();
        for (i, part) in self.parts.iter().enumerate() {
            match part {
                SourcePart::Finite(points) => {
                    out.extend(points.iter().filter(|p| &p.dist_sq(center) <= radius_sq).cloned());
                }
                SourcePart::Family(f) => {
                    let bound = ((&reach + &f.growth_d) / &f.growth_c).floor_int();
                    if let Some(limit) = limit {
                        let count = f.index_count(&bound).unwrap_or(u128::MAX);
                        if count > limit as u128 {
                            return Err(SourceError::TooManyCandidates { count, limit });
                        }
                    }
                    f.for_each_index(&bound, |k| {
                        let x = f.point(k).map_err(|_| SourceError::NotTotal {
                            part: i,
                            index: k.to_vec(),
                        })?;
                        if !f.growth_holds(k, &x) {
                            return Err(SourceError::GrowthViolated {
                                part: i,
                                index: k.to_vec(),
                            });
                        }
                        if &x.dist_sq(center) <= radius_sq {
                            out.push(x);
                        }
                        Ok(())
                    })?;
                }
            }
        }
        out.sort();
        out.dedup();
        if let Some(limit) = limit {
            if out.len() > limit {
                return Err(SourceError::TooManyCandidates {
                    count: out.len() as u128,
                    limit,
                });
            }
        }
        Ok(out)
    }

    pub fn contains_point(&self, x: &Point) -> Result<bool, SourceError> {
        Ok(!self.points_in_ball(x, &Scalar::zero())?.is_empty())
    }
}

fn spot_check(part: usize, f: &Family) -> Result<(), SourceError> {
    let check = |k: &[BigInt]| -> Result<(), SourceError> {
        if !k.iter().all(|x| f.range.admits(x)) {
            return Ok(());
        }
        let x = f.point(k).map_err(|_| SourceError::NotTotal {
            part,
            index: k.to_vec(),
        })?;
        if f.growth_holds(k, &x) {
            Ok(())
        } else {
            Err(SourceError::GrowthViolated {
                part,
                index: k.to_vec(),
            })
        }
    };
    let m = f.vars.len();
    if m == 1 {
        return f.for_each_index(&BigInt::from(SPOT_CHECK_RANGE), check);
    }
    // every axis out to the full range, plus a dense grid near the origin
    for axis in 0..m {
        for k in -SPOT_CHECK_RANGE..=SPOT_CHECK_RANGE {
            let mut idx: Vec<BigInt> = (0..m).map(|_| BigInt::zero()).collect();
            idx[axis] = BigInt::from(k);
            check(&idx)?;
        }
    }
    let mut grid = 0i64;
    while (2 * (grid + 1) + 1).pow(m as u32) <= 10_000 {
        grid += 1;
    }
    f.for_each_index(&BigInt::from(grid), check)
}
