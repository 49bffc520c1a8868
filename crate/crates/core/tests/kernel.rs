use lazyvor_core::linalg::{rank, solve_independent};
use lazyvor_core::witness::{check_caratheodory, check_steinitz, positively_spans};
use lazyvor_core::*;
use proptest::prelude::*;

fn v(c: &[i64]) -> Vector {
    Vector::from_ints(c)
}

fn hs(n: &[i64], b: i64) -> HalfSpace {
    HalfSpace::new(v(n), Scalar::from_int(b)).unwrap()
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-8i64..=8, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(rational(), dim).prop_map(Vector::new)
}

fn halfspace(dim: usize) -> impl Strategy<Value = HalfSpace> {
    (prop::collection::vec(-3i64..=3, dim), -4i64..=6)
        .prop_filter("nonzero normal", |(n, _)| n.iter().any(|&x| x != 0))
        .prop_map(|(n, b)| hs(&n, b))
}

fn hrep(dim: usize, max: usize) -> impl Strategy<Value = HRep> {
    prop::collection::vec(halfspace(dim), 1..=max).prop_map(move |h| HRep::new(dim, h).unwrap())
}

fn distinct(h: &HRep) -> bool {
    let s = h.halfspaces();
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !s[i].same_set(&s[j])))
}

/// Vertices by brute force: every `dim`-subset of constraints with a unique
/// solution that satisfies all constraints.
fn brute_vertices(h: &HRep) -> Vec<Point> {
    let n = h.dim();
    let s = h.halfspaces();
    let mut out: Vec<Point> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if s.len() < n {
        return out;
    }
    loop {
        let rows: Vec<Vector> = idx.iter().map(|&i| s[i].normal().clone()).collect();
        if rank(&rows, n) == n {
            // transpose so the unknown is a combination of columns
            let cols: Vec<Vector> = (0..n)
                .map(|c| rows.iter().map(|r| r[c].clone()).collect())
                .collect();
            let rhs: Vector = idx.iter().map(|&i| s[i].offset().clone()).collect();
            let x = Vector::new(solve_independent(&cols, &rhs).unwrap());
            if h.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        // next combination
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if idx[k] < s.len() - n + k {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Cone membership from basic solutions: some linearly independent subset
/// of generators writes `t` with nonnegative coefficients.
fn brute_cone_contains(gens: &[Vector], t: &Vector) -> bool {
    if t.is_zero() {
        return true;
    }
    let m = gens.len();
    (1u32..(1 << m)).any(|mask| {
        let sub: Vec<Vector> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()).collect();
        rank(&sub, t.dim()) == sub.len()
            && solve_independent(&sub, t).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    })
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        let more: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| {
                let mut t = s.clone();
                t.push(i);
                t
            })
            .collect();
        out.extend(more);
    }
    out
}

#[test]
fn remove_redundant_examples() {
    let h = HRep::new(2, vec![hs(&[1, 0], 1), hs(&[1, 0], 2), hs(&[0, 1], 1)]).unwrap();
    assert_eq!(h.remove_redundant().halfspaces(), &[hs(&[1, 0], 1), hs(&[0, 1], 1)]);
    assert!(HRep::whole_space(3).remove_redundant().is_empty());
}

#[test]
fn feasible_interior_examples() {
    let slab = HRep::new(1, vec![hs(&[1], 1), hs(&[-1], 0)]).unwrap();
    let x = slab.feasible_interior().unwrap();
    assert!(slab.halfspaces().iter().all(|h| h.strictly_contains(&x)));
    let plane = HRep::new(1, vec![hs(&[1], 0), hs(&[-1], 0)]).unwrap();
    assert_eq!(plane.feasible_interior(), None);
}

#[test]
fn hull_examples() {
    let (_, t) = convex_hull(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
    assert_eq!(t.vertices, vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]);
    let (h, s) = convex_hull(&[v(&[0, 0]), v(&[2, 0]), v(&[1, 0])]).unwrap();
    assert_eq!(s.vertices, vec![v(&[0, 0]), v(&[2, 0])]);
    assert!(!h.feasible_interior().is_some());
}

#[test]
fn polar_examples() {
    let cross = VRep::from_points(vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]).unwrap();
    let square = HRep::axis_box(&v(&[-1, -1]), &v(&[1, 1])).unwrap();
    assert!(polar_polytope(&cross).unwrap().same_set(&square));
    let corners = square.to_vrep();
    let diamond = HRep::new(
        2,
        vec![hs(&[1, 1], 1), hs(&[1, -1], 1), hs(&[-1, 1], 1), hs(&[-1, -1], 1)],
    )
    .unwrap();
    assert!(polar_polytope(&corners).unwrap().same_set(&diamond));
    let off = VRep::from_points(vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
    assert_eq!(polar_polytope(&off), Err(GeometryError::OriginNotInterior));
}

#[test]
fn recession_and_lineality_examples() {
    let h = HRep::new(2, vec![hs(&[-1, 0], 0), hs(&[0, -1], -1)]).unwrap();
    let r = h.recession_cone().unwrap();
    assert_eq!(r.halfspaces(), &[hs(&[-1, 0], 0), hs(&[0, -1], 0)]);
    let square = HRep::axis_box(&v(&[0, 0]), &v(&[1, 1])).unwrap();
    assert!(square.recession_cone().unwrap().to_vrep().is_bounded());
    assert!(square.lineality_space().is_empty());
    let slab = HRep::new(2, vec![hs(&[0, 1], 1), hs(&[0, -1], 0)]).unwrap();
    assert_eq!(slab.lineality_space(), vec![v(&[1, 0])]);
    assert_eq!(HRep::empty_set(2).recession_cone(), Err(GeometryError::EmptySet));
}

#[test]
fn witness_examples() {
    let pts = [v(&[0, 0]), v(&[1, 0]), v(&[0, 1])];
    let x = Vector::new(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
    let w = caratheodory_witness(&pts, &x).unwrap();
    assert_eq!(w.indices, vec![1, 2]);
    assert_eq!(w.coefficients.unwrap(), vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
    assert!(caratheodory_witness(&pts, &v(&[1, 1])).is_none());

    let cross = [v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
    assert_eq!(steinitz_witness(&cross, &v(&[0, 0])).unwrap().indices, vec![0, 1, 2, 3]);
    assert!(steinitz_witness(&cross, &v(&[1, 0])).is_none());
}

#[test]
fn cone_examples() {
    let q = FgCone::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
    assert_eq!(q.polar().halfspaces(), &[hs(&[1, 0], 0), hs(&[0, 1], 0)]);
    assert!(FgCone::zero(2).polar().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h_v_h_roundtrip(h in hrep(2, 7)) {
        let back = h.to_vrep().to_hrep();
        prop_assert!(back.same_set(&h));
    }

    #[test]
    fn h_v_h_roundtrip_3d(h in hrep(3, 6)) {
        let back = h.to_vrep().to_hrep();
        prop_assert!(back.same_set(&h));
    }

    #[test]
    fn vertices_match_brute_force(h in hrep(3, 8)) {
        let vr = h.to_vrep();
        prop_assume!(vr.lines.is_empty());
        prop_assert_eq!(vr.vertices, brute_vertices(&h));
    }

    #[test]
    fn redundancy_matches_drop_one(h in hrep(2, 10)) {
        prop_assume!(distinct(&h) && h.feasible_interior().is_some());
        let s = h.halfspaces();
        let expected: Vec<usize> = (0..s.len())
            .filter(|&i| {
                let others: Vec<HalfSpace> =
                    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
                !HRep::new(2, others).unwrap().to_vrep().within(&s[i])
            })
            .collect();
        prop_assert_eq!(h.irredundant_indices(), expected.clone());
        prop_assert_eq!(h.irredundant_indices_with(&h.to_vrep()), expected);
    }

    #[test]
    fn interior_point_agrees_with_grid(h in hrep(2, 5)) {
        let found = h.feasible_interior();
        if let Some(x) = &found {
            prop_assert!(h.halfspaces().iter().all(|g| g.strictly_contains(x)));
        }
        let grid = (-20..=20).any(|i| (-20..=20).any(|j| {
            let x = Vector::new(vec![Scalar::ratio(i, 4), Scalar::ratio(j, 4)]);
            h.halfspaces().iter().all(|g| g.strictly_contains(&x))
        }));
        if grid {
            prop_assert!(found.is_some());
        }
    }

    #[test]
    fn hull_extreme_points_leave_one_out(pts in prop::collection::vec(point(2), 1..=20)) {
        let (h, ext) = convex_hull(&pts).unwrap();
        let mut uniq = pts.clone();
        uniq.sort();
        uniq.dedup();
        let expected: Vec<Point> = uniq
            .iter()
            .filter(|x| {
                let others: Vec<Point> = uniq.iter().filter(|y| y != x).cloned().collect();
                caratheodory_witness(&others, x).is_none()
            })
            .cloned()
            .collect();
        prop_assert_eq!(&ext.vertices, &expected);
        prop_assert!(pts.iter().all(|x| h.contains(x)));
    }

    #[test]
    fn polar_involution(pts in prop::collection::vec(point(3), 4..=10)) {
        let k = VRep::from_points(pts.clone()).unwrap();
        let Ok(kp) = polar_polytope(&k) else { return Err(TestCaseError::reject("0 not interior")) };
        let kpp = polar_polytope(&kp.to_vrep()).unwrap();
        let (hull, _) = convex_hull(&pts).unwrap();
        prop_assert!(kpp.same_set(&hull));
    }

    #[test]
    fn polar_reverses_inclusion(
        pts in prop::collection::vec(point(2), 3..=8),
        more in prop::collection::vec(point(2), 1..=4),
    ) {
        let k1 = VRep::from_points(pts.clone()).unwrap();
        let Ok(p1) = polar_polytope(&k1) else { return Err(TestCaseError::reject("0 not interior")) };
        let mut all = pts.clone();
        all.extend(more);
        let p2 = polar_polytope(&VRep::from_points(all).unwrap()).unwrap();
        prop_assert!(p2.is_subset_of(&p1));
    }

    #[test]
    fn bounded_iff_origin_interior_to_polar(h in hrep(2, 6)) {
        // 0 interior to K
        prop_assume!(h.halfspaces().iter().all(|g| g.offset().is_positive()));
        let k = h.to_vrep();
        let mut polar = Vec::new();
        for x in &k.vertices {
            if !x.is_zero() {
                polar.push(HalfSpace::new(x.clone(), Scalar::one()).unwrap());
            }
        }
        for r in k.recession_generators() {
            polar.push(HalfSpace::new(r, Scalar::zero()).unwrap());
        }
        let polar = HRep::new(2, polar).unwrap();
        // 0 is interior iff eps * (±e_i) lies in K* for a small enough eps
        let eps = polar
            .halfspaces()
            .iter()
            .filter(|g| g.offset().is_positive())
            .map(|g| g.offset() / &(&g.normal().max_abs() + &Scalar::one()))
            .min()
            .unwrap_or_else(Scalar::one);
        let interior = (0..2).all(|i| {
            let e = Vector::unit(2, i).scale(&eps);
            polar.contains(&e) && polar.contains(&-&e)
        });
        let bounded = h.recession_cone().unwrap().to_vrep().recession_generators().is_empty();
        prop_assert_eq!(bounded, interior);
    }

    #[test]
    fn line_free_sets_are_hull_plus_cone(h in hrep(3, 7)) {
        let k = h.to_vrep();
        prop_assume!(!k.is_empty_set() && k.lines.is_empty());
        let rebuilt = VRep { dim: 3, vertices: k.vertices.clone(), rays: k.rays.clone(), lines: vec![] };
        prop_assert!(rebuilt.to_hrep().same_set(&h));
        if h.recession_cone().unwrap().to_vrep().recession_generators().is_empty() {
            prop_assert!(k.rays.is_empty());
        }
    }

    #[test]
    fn recession_directions_stay_inside(h in hrep(2, 6)) {
        let Some(x) = h.feasible_point() else { return Err(TestCaseError::reject("empty")) };
        for d in h.recession_cone().unwrap().to_vrep().recession_generators() {
            for l in [1, 10, 100] {
                prop_assert!(h.contains(&(&x + &d.scale(&Scalar::from_int(l)))));
            }
        }
    }

    #[test]
    fn lineality_by_substitution(h in hrep(3, 4)) {
        prop_assume!(h.is_feasible());
        let rec = h.recession_cone().unwrap();
        for l in h.lineality_space() {
            prop_assert!(rec.contains(&l) && rec.contains(&-&l));
        }
        let lin = h.lineality_space();
        for c in [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, -1, 2])] {
            let both = rec.contains(&c) && rec.contains(&-&c);
            let mut with = lin.clone();
            with.push(c.clone());
            prop_assert_eq!(both, rank(&with, 3) == rank(&lin, 3));
        }
    }

    #[test]
    fn caratheodory_recombines_exactly(pts in prop::collection::vec(point(3), 1..=9), pick in 0usize..9) {
        // a point inside by construction: average of a few input points
        let k = pts.len().min(pick + 1);
        let inv = Scalar::ratio(1, k as i64);
        let x = pts[..k].iter().fold(Vector::zeros(3), |a, p| &a + p).scale(&inv);
        let w = caratheodory_witness(&pts, &x).unwrap();
        prop_assert!(w.indices.len() <= 4);
        prop_assert!(check_caratheodory(&pts, &x, &w));
    }

    #[test]
    fn steinitz_small_and_valid_2d(pts in prop::collection::vec(point(2), 3..=10), x in point(2)) {
        match steinitz_witness(&pts, &x) {
            Some(w) => {
                prop_assert!(w.indices.len() <= 4);
                prop_assert!(check_steinitz(&pts, &x, &w));
            }
            None => {
                // no subset of size <= 4 works either
                for s in subsets_up_to(pts.len(), 4) {
                    let dirs: Vec<Vector> = s.iter().map(|&i| &pts[i] - &x).collect();
                    prop_assert!(!positively_spans(&dirs, 2));
                }
            }
        }
    }

    #[test]
    fn steinitz_small_and_valid_3d(pts in prop::collection::vec(point(3), 4..=12), x in point(3)) {
        if let Some(w) = steinitz_witness(&pts, &x) {
            prop_assert!(w.indices.len() <= 6);
            prop_assert!(check_steinitz(&pts, &x, &w));
        } else {
            let dirs: Vec<Vector> = pts.iter().map(|p| p - &x).collect();
            prop_assert!(!positively_spans(&dirs, 3));
        }
    }

    #[test]
    fn cone_membership_agrees_with_basic_solutions(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=5),
        t in prop::collection::vec(-4i64..=4, 3),
    ) {
        let gens: Vec<Vector> = gens.iter().map(|g| v(g)).filter(|g| !g.is_zero()).collect();
        let c = FgCone::new(3, gens.clone()).unwrap();
        let t = v(&t);
        prop_assert_eq!(c.contains(&t), brute_cone_contains(&gens, &t));
        for g in &gens {
            prop_assert!(c.contains(g));
        }
    }

    #[test]
    fn double_polar_and_antitone(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=5),
        extra in prop::collection::vec(-3i64..=3, 3),
    ) {
        let gens: Vec<Vector> = gens.iter().map(|g| v(g)).collect();
        let c = FgCone::new(3, gens.clone()).unwrap();
        let dual = FgCone::from_hrep(&c.polar());
        let back = FgCone::from_hrep(&dual.polar());
        prop_assert!(back.equals(&c));
        let mut more = gens;
        more.push(v(&extra));
        let bigger = FgCone::new(3, more).unwrap();
        prop_assert!(bigger.polar().is_subset_of(&c.polar()));
        let full = c.polar().to_vrep();
        let polar_is_origin = full.recession_generators().is_empty();
        prop_assert_eq!(c.is_fullspace(), polar_is_origin);
    }

    #[test]
    fn polar_cone_sampling(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=4),
        y in prop::collection::vec(-4i64..=4, 2),
    ) {
        let gens: Vec<Vector> = gens.iter().map(|g| v(g)).filter(|g| !g.is_zero()).collect();
        let c = FgCone::new(2, gens.clone()).unwrap();
        let y = v(&y);
        let inside = gens.iter().all(|g| !g.dot(&y).is_positive());
        prop_assert_eq!(c.polar().contains(&y), inside);
    }
}
