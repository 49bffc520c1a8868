//! Exact two-phase simplex with Bland's anti-cycling rule.
//!
//! Only what the kernel needs: feasibility, bounded/unbounded detection and
//! optimal values for small dense problems.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Scalar>, value: Scalar },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Scalar> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j`.
    reduced: Vec<Scalar>,
    value: Scalar,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.reduced.len()
    }

    fn set_objective(&mut self, cost: &[Scalar]) {
        let n = self.ncols();
        let mut reduced: Vec<Scalar> = (0..n)
            .map(|j| cost.get(j).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        let mut value = Scalar::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).cloned().unwrap_or_else(Scalar::zero);
            if cb.is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                let t = &self.rows[i][j];
                if !t.is_zero() {
                    *r -= &(&cb * t);
                }
            }
            value += &(&cb * &self.rhs[i]);
        }
        self.reduced = reduced;
        self.value = value;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("pivot on zero");
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(p * &f);
                }
            }
            self.rhs[i] -= &(&pivot_rhs * &f);
        }
        let f = self.reduced[c].clone();
        if !f.is_zero() {
            for (x, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(p * &f);
                }
            }
            self.value += &(&pivot_rhs * &f);
        }
        self.basis[r] = c;
    }

    /// Runs Bland-rule pivots over the columns `< limit`.
    fn run(&mut self, limit: usize) -> Step {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.reduced[j].is_positive()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][enter];
                if !t.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / t;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match leave {
                None => return Step::Unbounded,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Maximizes `cost . x` subject to `a x = b`, `x >= 0`.
pub fn solve_standard(a: &[Vec<Scalar>], b: &[Scalar], cost: &[Scalar]) -> LpOutcome {
    let m = a.len();
    let n = cost.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut rhs: Vec<Scalar> = Vec::with_capacity(m);
    for (row, bi) in a.iter().zip(b) {
        debug_assert_eq!(row.len(), n);
        if bi.is_negative() {
            rows.push(row.iter().map(|x| -x).collect());
            rhs.push(-bi);
        } else {
            rows.push(row.clone());
            rhs.push(bi.clone());
        }
    }

    // reuse unit columns as the starting basis where possible
    let mut basis = vec![usize::MAX; m];
    let mut used = vec![false; n];
    for j in 0..n {
        let mut hit = None;
        let mut ok = true;
        for i in 0..m {
            let x = &rows[i][j];
            if x.is_zero() {
                continue;
            }
            if hit.is_none() && *x == Scalar::one() {
                hit = Some(i);
            } else {
                ok = false;
                break;
            }
        }
        if let (true, Some(i)) = (ok, hit) {
            if basis[i] == usize::MAX && !used[j] {
                basis[i] = j;
                used[j] = true;
            }
        }
    }
    let mut n_art = 0;
    for i in 0..m {
        if basis[i] == usize::MAX {
            basis[i] = n + n_art;
            n_art += 1;
        }
    }
    let total = n + n_art;
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(total, Scalar::zero());
        if basis[i] >= n {
            row[basis[i]] = Scalar::one();
        }
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        reduced: vec![Scalar::zero(); total],
        value: Scalar::zero(),
    };

    if n_art > 0 {
        let mut phase1 = vec![Scalar::zero(); total];
        for c in phase1.iter_mut().skip(n) {
            *c = -Scalar::one();
        }
        tab.set_objective(&phase1);
        match tab.run(total) {
            Step::Unbounded => unreachable!("phase one objective is bounded above by zero"),
            Step::Optimal => {}
        }
        if tab.value.is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out; drop rows that are linearly dependent
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n {
                match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in tab.rows.iter_mut() {
            row.truncate(n);
        }
        tab.reduced.truncate(n);
    }

    tab.set_objective(cost);
    match tab.run(n) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let mut x = vec![Scalar::zero(); n];
            for (i, &bcol) in tab.basis.iter().enumerate() {
                x[bcol] = tab.rhs[i].clone();
            }
            LpOutcome::Optimal {
                x,
                value: tab.value,
            }
        }
    }
}

/// Maximizes `objective . x` over `{x : <a_i, x> <= b_i}` with `x` free.
pub fn maximize(dim: usize, objective: &Vector, constraints: &[(&Vector, &Scalar)]) -> LpOutcome {
    let m = constraints.len();
    let ncols = 2 * dim + m;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, (normal, offset)) in constraints.iter().enumerate() {
        let mut row = vec![Scalar::zero(); ncols];
        for k in 0..dim {
            row[k] = normal[k].clone();
            row[dim + k] = -&normal[k];
        }
        row[2 * dim + i] = Scalar::one();
        a.push(row);
        b.push((*offset).clone());
    }
    let mut cost = vec![Scalar::zero(); ncols];
    for k in 0..dim {
        cost[k] = objective[k].clone();
        cost[dim + k] = -&objective[k];
    }
    match solve_standard(&a, &b, &cost) {
        LpOutcome::Optimal { x, value } => {
            let point = (0..dim).map(|k| &x[k] - &x[dim + k]).collect();
            LpOutcome::Optimal { x: point, value }
        }
        other => other,
    }
}

/// A basic nonnegative solution of `sum_j lambda_j * generators[j] = target`.
///
/// Basic solutions use at most `dim` generators.
pub fn nonneg_combination(generators: &[Vector], target: &Vector) -> Option<Vec<Scalar>> {
    let dim = target.dim();
    let a: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    let cost = vec![Scalar::zero(); generators.len()];
    match solve_standard(&a, target.coords(), &cost) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
