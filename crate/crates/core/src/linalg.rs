//! Dense exact linear algebra over `Q`: rank, kernels, orthogonal bases.

use alloc::vec::Vec;

use crate::scalar::{Scalar, Vector};

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &(s * &f);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a set of vectors of dimension `dim`.
pub fn rank(vectors: &[Vector], dim: usize) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    rref(&mut rows, dim).len()
}

/// Basis of `{x : <v, x> = 0 for all v in rows}`.
pub fn kernel(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|v| v.coords().to_vec()).collect();
    let pivots = rref(&mut m, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = Vector::zeros(dim);
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v.primitive());
    }
    basis
}

/// Mutually orthogonal (unnormalized) basis of `span(vectors)`.
pub fn orthogonal_basis(vectors: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &out {
            let coef = w.dot(b) / b.norm_sq();
            w = &w - &b.scale(&coef);
        }
        if !w.is_zero() {
            out.push(w.primitive());
        }
    }
    out
}

/// Mutually orthogonal basis of the orthogonal complement of `span(vectors)`.
pub fn orthogonal_complement(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    orthogonal_basis(&kernel(vectors, dim))
}

/// Solves `sum_j x_j * columns[j] = target` if the columns are linearly
/// independent and a solution exists.
pub fn solve_independent(columns: &[Vector], target: &Vector) -> Option<Vec<Scalar>> {
    let dim = target.dim();
    let k = columns.len();
    let mut rows: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some((0..k).map(|j| rows[j][k].clone()).collect())
}
