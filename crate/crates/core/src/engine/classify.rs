use alloc::vec::Vec;

use super::{Classification, EngineError, Voronoi};
use crate::cone::FgCone;
use crate::scalar::{Point, Scalar, Vector};
use crate::source::ConeHint;
use crate::witness::steinitz_witness;

fn witness_points(candidates: &[Point], p: &Point) -> Option<Vec<Point>> {
    steinitz_witness(candidates, p).map(|w| w.indices.iter().map(|&i| candidates[i].clone()).collect())
}

fn directions(points: &[Point], p: &Point) -> Vec<Vector> {
    points.iter().map(|q| q - p).collect()
}

impl Voronoi<'_> {
    /// Inner if a Steinitz witness turns up within `max_radius_sq`, searching
    /// squared radii `1, 4, 16, ...`. Finite sources are decided exactly from
    /// all of their points.
    pub fn classify(&self, p: &Point, max_radius_sq: &Scalar) -> Result<Classification, EngineError> {
        self.require_member(p)?;
        let dim = self.src.dim();

        if let Some(all) = self.src.finite_points() {
            let others: Vec<Point> = all.into_iter().filter(|q| q != p).collect();
            if let Some(witness) = witness_points(&others, p) {
                return Ok(Classification::Inner { witness });
            }
            let cone = FgCone::new(dim, directions(&others, p))?;
            let support = cone.polar_direction().expect("cone is not the whole space");
            return Ok(Classification::Boundary { support });
        }

        let four = Scalar::from_int(4);
        let mut r = Scalar::one();
        loop {
            let r_eff = if &r < max_radius_sq { r.clone() } else { max_radius_sq.clone() };
            let ball: Vec<Point> = self.ball(p, &r_eff)?.into_iter().filter(|q| q != p).collect();
            // a nonzero polar rules out a witness without any LP
            let open = FgCone::new(dim, directions(&ball, p))?.polar_direction().is_none();
            if let Some(witness) = open.then(|| witness_points(&ball, p)).flatten() {
                return Ok(Classification::Inner { witness });
            }
            if &r >= max_radius_sq {
                break;
            }
            r = &r * &four;
        }

        match self.src.hint_at(p) {
            Some(ConeHint::FinitelyGenerated { witness_points: w }) => {
                let cone = FgCone::new(dim, directions(w, p))?;
                match cone.polar_direction() {
                    Some(support) => Ok(Classification::Boundary { support }),
                    None => {
                        let witness = witness_points(w, p).ok_or(EngineError::InvalidWitness)?;
                        Ok(Classification::Inner { witness })
                    }
                }
            }
            Some(ConeHint::NotClosed { .. }) => {
                let cone = self.direction_cone_scan(p, max_radius_sq)?;
                let support = cone.polar_direction().ok_or_else(|| {
                    EngineError::InconsistentHint(alloc::string::String::from(
                        "scanned direction cone is the whole space",
                    ))
                })?;
                Ok(Classification::Boundary { support })
            }
            None => Ok(Classification::Undetermined {
                radius_sq: max_radius_sq.clone(),
            }),
        }
    }
}
