//! Incremental double description for polyhedral cones `{y : <a_i, y> >= 0}`.
//!
//! Rays are paired with the set of constraints they make tight. New rays are
//! only formed from adjacent pairs, adjacency being decided combinatorially
//! (no other ray is tight on every constraint both are tight on), so the ray
//! list stays exactly the set of extreme rays modulo the lineality space.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }

    /// `{0, .., k-1}` in a set sized for `n` elements.
    fn prefix(k: usize, n: usize) -> Self {
        let mut s = Self::new(n);
        for i in 0..k {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vector,
    tight: BitSet,
}

/// Extreme rays and a lineality basis of a polyhedral cone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vector>,
    pub lines: Vec<Vector>,
}

/// Generators of `{y in Q^dim : <a, y> >= 0 for every a in constraints}`.
pub fn cone_generators(dim: usize, constraints: &[Vector]) -> ConeGenerators {
    let m = constraints.len();
    let mut lines: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lines.swap_remove(pos);
            let mut v0 = a.dot(&l0);
            if v0.is_negative() {
                l0 = -&l0;
                v0 = -v0;
            }
            for l in lines.iter_mut() {
                let t = a.dot(l);
                if !t.is_zero() {
                    *l = (&*l - &l0.scale(&(t / &v0))).primitive();
                }
            }
            for r in rays.iter_mut() {
                let t = a.dot(&r.v);
                if !t.is_zero() {
                    r.v = (&r.v - &l0.scale(&(t / &v0))).primitive();
                }
                r.tight.insert(k);
            }
            rays.push(Ray {
                v: l0.primitive(),
                tight: BitSet::prefix(k, m),
            });
            continue;
        }

        let vals: Vec<Scalar> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let need = dim.saturating_sub(lines.len() + 2);
        let mut next: Vec<Ray> = Vec::new();
        for (i, pos) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (j, neg) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common = rays[i].tight.intersect(&rays[j].tight);
                if common.len() < need {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(o, r)| o != i && o != j && r.tight.is_superset(&common));
                if blocked {
                    continue;
                }
                let w = &rays[j].v.scale(pos) - &rays[i].v.scale(neg);
                let mut tight = common;
                tight.insert(k);
                next.push(Ray {
                    v: w.primitive(),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.tight.insert(k);
            }
            kept.push(r);
        }
        kept.extend(next);
        rays = kept;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lines: lines.into_iter().map(|l| l.primitive()).collect(),
    }
}
