//! Small certificates of hull membership.
//!
//! A Carathéodory witness writes a point as a convex combination of at most
//! `n + 1` input points. A Steinitz witness is a subset of at most `2n` input
//! points whose hull contains the point in its interior.

use alloc::vec::Vec;

use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::scalar::{Point, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Indices into the input point list, ascending.
    pub indices: Vec<usize>,
    /// Convex coefficients, parallel to `indices`. Absent for Steinitz
    /// witnesses.
    pub coefficients: Option<Vec<Scalar>>,
}

/// Whether `cone(vectors) = Q^dim`, i.e. the origin is interior to
/// `conv(vectors)`.
///
/// Equivalent to: the vectors span `Q^dim` and some strictly positive
/// combination of them vanishes.
pub fn positively_spans(vectors: &[Vector], dim: usize) -> bool {
    if vectors.len() <= dim || linalg::rank(vectors, dim) < dim {
        return false;
    }
    // sum mu_i v_i = -sum v_i with mu >= 0, i.e. lambda = 1 + mu >= 1
    let target: Vector = (0..dim)
        .map(|k| -vectors.iter().map(|v| v[k].clone()).sum::<Scalar>())
        .collect();
    lp::nonneg_combination(vectors, &target).is_some()
}

/// Writes `x` as a convex combination of at most `dim + 1` of `points`.
pub fn caratheodory_witness(points: &[Point], x: &Point) -> Option<Witness> {
    let dim = x.dim();
    if points.is_empty() {
        return None;
    }
    // rows: coordinates, then sum lambda = 1
    let mut a: Vec<Vec<Scalar>> = (0..dim)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    a.push(points.iter().map(|_| Scalar::one()).collect());
    let mut b: Vec<Scalar> = x.coords().to_vec();
    b.push(Scalar::one());
    let cost = alloc::vec![Scalar::zero(); points.len()];
    let LpOutcome::Optimal { x: lambda, .. } = lp::solve_standard(&a, &b, &cost) else {
        return None;
    };
    let (indices, coefficients): (Vec<usize>, Vec<Scalar>) = lambda
        .into_iter()
        .enumerate()
        .filter(|(_, l)| !l.is_zero())
        .unzip();
    let w = Witness {
        indices,
        coefficients: Some(coefficients),
    };
    debug_assert!(check_caratheodory(points, x, &w));
    Some(w)
}

/// Exact recombination check for a Carathéodory witness.
pub fn check_caratheodory(points: &[Point], x: &Point, w: &Witness) -> bool {
    let Some(coef) = &w.coefficients else {
        return false;
    };
    if w.indices.len() > x.dim() + 1 || coef.len() != w.indices.len() {
        return false;
    }
    if coef.iter().any(Scalar::is_negative) || coef.iter().cloned().sum::<Scalar>() != Scalar::one() {
        return false;
    }
    let mut acc = Vector::zeros(x.dim());
    for (&i, c) in w.indices.iter().zip(coef) {
        acc = &acc + &points[i].scale(c);
    }
    &acc == x
}

/// At most `2 * dim` of `points` whose hull contains `x` in its interior.
///
/// Each `±e_k` is written as a basic nonnegative combination of the
/// differences `p - x` (at most `dim` terms each); the union of the supports
/// positively spans, and is then pruned greedily, farthest points first, to an
/// inclusion-minimal positively spanning subset. Minimal positively spanning
/// sets have at most `2 * dim` elements, so the pruning always meets the
/// bound; the exhaustive search is kept as a fallback.
pub fn steinitz_witness(points: &[Point], x: &Point) -> Option<Witness> {
    let dim = x.dim();
    let diffs: Vec<(usize, Vector)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p - x))
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let vecs: Vec<Vector> = diffs.iter().map(|(_, d)| d.clone()).collect();

    let mut pool: Vec<usize> = Vec::new();
    for k in 0..dim {
        for sign in [1i64, -1] {
            let target = Vector::unit(dim, k).scale(&Scalar::from_int(sign));
            let lambda = lp::nonneg_combination(&vecs, &target)?;
            for (j, l) in lambda.iter().enumerate() {
                if !l.is_zero() && !pool.contains(&j) {
                    pool.push(j);
                }
            }
        }
    }
    // farthest first, ties broken lexicographically by point
    pool.sort_by(|&a, &b| {
        vecs[b]
            .norm_sq()
            .cmp(&vecs[a].norm_sq())
            .then_with(|| points[diffs[b].0].cmp(&points[diffs[a].0]))
    });
    debug_assert!(positively_spans(
        &pool.iter().map(|&j| vecs[j].clone()).collect::<Vec<_>>(),
        dim
    ));
    let mut k = 0;
    while k < pool.len() {
        let trial: Vec<Vector> = pool
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != k)
            .map(|(_, &j)| vecs[j].clone())
            .collect();
        if positively_spans(&trial, dim) {
            pool.remove(k);
        } else {
            k += 1;
        }
    }
    let chosen = if pool.len() <= 2 * dim {
        pool
    } else {
        exhaustive_steinitz(&vecs, dim)?
    };
    let mut indices: Vec<usize> = chosen.into_iter().map(|j| diffs[j].0).collect();
    indices.sort_unstable();
    let w = Witness {
        indices,
        coefficients: None,
    };
    debug_assert!(check_steinitz(points, x, &w));
    Some(w)
}

/// First subset (by size, then lexicographically by index) of size at most
/// `2 * dim` that positively spans.
fn exhaustive_steinitz(vecs: &[Vector], dim: usize) -> Option<Vec<usize>> {
    for size in (dim + 1)..=(2 * dim).min(vecs.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let sub: Vec<Vector> = idx.iter().map(|&i| vecs[i].clone()).collect();
            if positively_spans(&sub, dim) {
                return Some(idx);
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < vecs.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    None
}

/// Size bound plus interiority of `x` in the hull of the selected points.
pub fn check_steinitz(points: &[Point], x: &Point, w: &Witness) -> bool {
    let dim = x.dim();
    if w.indices.len() > 2 * dim || w.indices.iter().any(|&i| i >= points.len()) {
        return false;
    }
    let diffs: Vec<Vector> = w.indices.iter().map(|&i| &points[i] - x).collect();
    positively_spans(&diffs, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn caratheodory_on_triangle_edge() {
        let pts = [
            Vector::from_ints(&[0, 0]),
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
        ];
        let x = Vector::new(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        let w = caratheodory_witness(&pts, &x).unwrap();
        assert_eq!(w.indices, vec![1, 2]);
        assert_eq!(w.coefficients, Some(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]));
        assert!(caratheodory_witness(&pts, &Vector::from_ints(&[1, 1])).is_none());
    }

    #[test]
    fn steinitz_cross() {
        let pts = [
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[0, -1]),
        ];
        let w = steinitz_witness(&pts, &Vector::zeros(2)).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2, 3]);
        assert!(steinitz_witness(&pts, &Vector::from_ints(&[1, 0])).is_none());
        let edge = Vector::new(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        assert!(steinitz_witness(&pts, &edge).is_none());
    }

    #[test]
    fn exhaustive_fallback_finds_small_subsets() {
        let v = [
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[2, 0]),
            Vector::from_ints(&[-1, 1]),
            Vector::from_ints(&[-1, -1]),
        ];
        assert_eq!(exhaustive_steinitz(&v, 2), Some(vec![0, 2, 3]));
        assert_eq!(exhaustive_steinitz(&v[..2], 2), None);
    }

    #[test]
    fn positive_spanning() {
        let v = [Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
        assert!(!positively_spans(&v, 2));
        let v = [
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[-1, -1]),
        ];
        assert!(positively_spans(&v, 2));
    }
}
