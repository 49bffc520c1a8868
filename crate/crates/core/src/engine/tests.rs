use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::presets;
use crate::source::SourcePart;

fn pt(c: &[i64]) -> Point {
    Vector::from_ints(c)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn finite(points: &[&[i64]]) -> PointSource {
    let dim = points[0].len();
    PointSource::new(dim, vec![SourcePart::Finite(points.iter().map(|c| pt(c)).collect())], vec![])
        .unwrap()
}

fn halfspace(n: &[i64], b: Scalar) -> HalfSpace {
    HalfSpace::new(pt(n), b).unwrap()
}

#[test]
fn bisector_examples() {
    let h = bisector_halfspace(&pt(&[0, 0]), &pt(&[2, 0])).unwrap();
    assert_eq!(h, halfspace(&[2, 0], q(2, 1)));
    let h = bisector_halfspace(&pt(&[1, 0]), &pt(&[0, 0])).unwrap();
    assert_eq!(h, halfspace(&[-1, 0], q(-1, 2)));
    let h = bisector_halfspace(&pt(&[1, 0]), &pt(&[0, 3])).unwrap();
    assert_eq!(h, halfspace(&[-1, 3], q(4, 1)));
    let mid = Vector::new(vec![q(1, 2), q(3, 2)]);
    assert!(h.slack(&mid).is_zero());
    assert_eq!(
        bisector_halfspace(&pt(&[1, 1]), &pt(&[1, 1])),
        Err(EngineError::CoincidentSites)
    );
}

#[test]
fn classify_examples() {
    let z2 = presets::lattice_z2();
    let v = Voronoi::new(&z2);
    match v.classify(&pt(&[0, 0]), &q(100, 1)).unwrap() {
        Classification::Inner { witness } => assert!(witness.len() <= 4),
        c => panic!("{c:?}"),
    }

    let p1 = presets::p1();
    let v = Voronoi::new(&p1);
    assert_eq!(
        v.classify(&pt(&[1, 0]), &q(10_000, 1)).unwrap(),
        Classification::Boundary { support: pt(&[1, 0]) }
    );
    assert_eq!(
        v.classify(&pt(&[1, 1]), &q(4, 1)),
        Err(EngineError::NotAMember(pt(&[1, 1])))
    );

    let p2 = presets::p2();
    let v = Voronoi::new(&p2);
    assert!(matches!(
        v.classify(&pt(&[1, 0]), &q(10_000, 1)).unwrap(),
        Classification::Inner { .. }
    ));
}

#[test]
fn direction_cone_examples() {
    let p1 = presets::p1();
    let v = Voronoi::new(&p1);
    let a = pt(&[1, 0]);
    let scan = v.direction_cone_scan(&a, &q(25, 4)).unwrap();
    let expected = FgCone::new(2, vec![pt(&[-1, -2]), pt(&[-1, 2])]).unwrap();
    assert!(scan.equals(&expected));
    assert!(v.direction_cone_scan(&a, &Scalar::zero()).unwrap().equals(&FgCone::zero(2)));
    assert!(!v.cone_stabilized(&a, &q(25, 4), &q(25, 1)).unwrap());
    assert_eq!(
        v.cone_stabilized(&a, &q(2, 1), &q(1, 1)),
        Err(EngineError::RadiusOrder)
    );

    let z2 = presets::lattice_z2();
    let v = Voronoi::new(&z2);
    assert!(v.direction_cone_scan(&pt(&[0, 0]), &Scalar::one()).unwrap().is_fullspace());
    assert!(v.cone_stabilized(&pt(&[0, 0]), &q(1, 1), &q(100, 1)).unwrap());
}

#[test]
fn lattice_cell_is_unit_square() {
    let z2 = presets::lattice_z2();
    let v = Voronoi::new(&z2);
    let cell = v.cell(&pt(&[0, 0]), &q(100, 1)).unwrap();
    assert_eq!(cell.kind, CellKind::Polytope);
    let h = Scalar::ratio(1, 2);
    let mut want: Vec<Point> = Vec::new();
    for sx in [-1, 1] {
        for sy in [-1, 1] {
            want.push(Vector::new(vec![&h * &Scalar::from_int(sx), &h * &Scalar::from_int(sy)]));
        }
    }
    want.sort();
    assert_eq!(cell.vrep.as_ref().unwrap().vertices, want);
    assert_eq!(
        relevant_points(&cell).unwrap(),
        &[pt(&[-1, 0]), pt(&[0, -1]), pt(&[0, 1]), pt(&[1, 0])]
    );
}

#[test]
fn p1_site_is_non_polyhedral() {
    let p1 = presets::p1();
    let v = Voronoi::new(&p1);
    let cell = v.cell(&pt(&[1, 0]), &q(10_000, 1)).unwrap();
    assert_eq!(cell.kind, CellKind::NonPolyhedral);
    assert!(cell.hrep.is_none());
    let Certificate::NonPolyhedral { evidence, .. } = &cell.certificate else {
        panic!("{:?}", cell.certificate);
    };
    assert!(evidence.len() >= 3);
    assert!(evidence.iter().all(|s| s.grew && !s.contains_limit));
    assert_eq!(relevant_points(&cell), Err(EngineError::WrongResultKind(CellKind::NonPolyhedral)));
}

#[test]
fn boundary_examples() {
    let src = finite(&[&[0, 0], &[1, 0], &[0, 1]]);
    let v = Voronoi::new(&src);
    let cell = v.cell(&pt(&[0, 0]), &q(100, 1)).unwrap();
    assert_eq!(cell.kind, CellKind::Polyhedron);
    let want = HRep::new(
        2,
        vec![halfspace(&[1, 0], q(1, 2)), halfspace(&[0, 1], q(1, 2))],
    )
    .unwrap();
    assert!(cell.hrep.as_ref().unwrap().same_set(&want));
    assert_eq!(cell.relevant_points, vec![pt(&[0, 1]), pt(&[1, 0])]);
    let rec = cell.recession.unwrap();
    assert!(rec.equals(&FgCone::new(2, vec![pt(&[-1, 0]), pt(&[0, -1])]).unwrap()));

    let src = finite(&[&[0, 0], &[2, 0]]);
    let cell = Voronoi::new(&src).cell(&pt(&[0, 0]), &q(100, 1)).unwrap();
    assert_eq!(cell.hrep.unwrap().halfspaces(), &[halfspace(&[2, 0], q(2, 1))]);

    let src = finite(&[&[0, 0], &[1, 0], &[-1, 0]]);
    let cell = Voronoi::new(&src).cell(&pt(&[1, 0]), &q(100, 1)).unwrap();
    let hrep = cell.hrep.unwrap();
    assert!(hrep.same_set(&HRep::new(2, vec![halfspace(&[-1, 0], q(-1, 2))]).unwrap()));
    assert_eq!(cell.vrep.unwrap().lines.len(), 1);
    assert_eq!(cell.relevant_points, vec![pt(&[0, 0])]);
}

#[test]
fn boundary_with_hint() {
    let src = PointSource::new(
        2,
        vec![SourcePart::Finite(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[3, 3])])],
        vec![(
            pt(&[0, 0]),
            ConeHint::FinitelyGenerated {
                witness_points: vec![pt(&[1, 0]), pt(&[0, 1])],
            },
        )],
    )
    .unwrap();
    let cell = Voronoi::new(&src).cell_boundary(&pt(&[0, 0]), &[pt(&[1, 0]), pt(&[0, 1])]).unwrap();
    assert_eq!(cell.relevant_points, vec![pt(&[0, 1]), pt(&[1, 0])]);
    let Certificate::Boundary { s_prime_sq, s_double_prime_sq, .. } = cell.certificate else {
        panic!()
    };
    // H ∩ (C + p) is the square [0, 1/2]^2; Ext(H) = {(1/2, 1/2)}
    assert_eq!(s_prime_sq, q(1, 2));
    assert_eq!(s_double_prime_sq, q(1, 2));

    // a witness list missing a direction is caught
    let err = Voronoi::new(&src).cell_boundary(&pt(&[0, 0]), &[pt(&[1, 0])]);
    assert!(matches!(err, Err(EngineError::InconsistentHint(_))));
}

#[test]
fn dominated_bisector_is_dropped() {
    let src = finite(&[&[0, 0], &[1, 0], &[3, 0]]);
    let cell = Voronoi::new(&src).cell(&pt(&[0, 0]), &q(100, 1)).unwrap();
    assert_eq!(relevant_points(&cell).unwrap(), &[pt(&[1, 0])]);
}

#[test]
fn singleton_is_whole_space() {
    let src = finite(&[&[2, 5]]);
    let cell = Voronoi::new(&src).cell(&pt(&[2, 5]), &q(100, 1)).unwrap();
    assert_eq!(cell.kind, CellKind::Polyhedron);
    assert!(cell.hrep.unwrap().is_empty());
    assert!(cell.relevant_points.is_empty());
}

#[test]
fn square_around_site() {
    let src = finite(&[&[0, 0], &[2, 2], &[2, -2], &[-2, 2], &[-2, -2]]);
    let cell = Voronoi::new(&src).cell(&pt(&[0, 0]), &q(100, 1)).unwrap();
    assert_eq!(cell.kind, CellKind::Polytope);
    assert_eq!(cell.relevant_points.len(), 4);
    let all = HRep::new(
        2,
        [[2, 2], [2, -2], [-2, 2], [-2, -2]]
            .iter()
            .map(|c| bisector_halfspace(&pt(&[0, 0]), &pt(c)).unwrap())
            .collect(),
    )
    .unwrap();
    assert!(cell.hrep.unwrap().same_set(&all));
}

#[test]
fn truncated_examples() {
    let z2 = presets::lattice_z2();
    let window = HRep::axis_box(&pt(&[-3, -3]), &pt(&[3, 3])).unwrap();
    let cell = Voronoi::new(&z2).cell_truncated(&pt(&[0, 0]), &window).unwrap();
    assert_eq!(cell.kind, CellKind::Truncated);
    assert_eq!(cell.relevant_points.len(), 4);
    let Certificate::Truncated { window_facets_kept, .. } = cell.certificate else { panic!() };
    assert_eq!(window_facets_kept, 0);

    let src = finite(&[&[0, 0], &[2, 0]]);
    let window = HRep::axis_box(&pt(&[-1, -1]), &pt(&[1, 1])).unwrap();
    let cell = Voronoi::new(&src).cell_truncated(&pt(&[0, 0]), &window).unwrap();
    assert!(cell.relevant_points.is_empty());
    assert!(cell.hrep.unwrap().same_set(&window));

    let window = HRep::axis_box(&pt(&[0, -1]), &pt(&[1, 1])).unwrap();
    assert_eq!(
        Voronoi::new(&src).cell_truncated(&pt(&[0, 0]), &window),
        Err(EngineError::OutsideWindow)
    );
}

#[test]
fn p2_inner_cells_are_bounded() {
    let p2 = presets::p2();
    let v = Voronoi::new(&p2);
    for site in [pt(&[1, 0]), Vector::new(vec![q(3, 1), q(2, 3)])] {
        let cell = v.cell(&site, &q(1_000_000, 1)).unwrap();
        assert_eq!(cell.kind, CellKind::Polytope, "{site}");
        assert!(cell.vrep.unwrap().is_bounded());
    }
}

#[test]
fn candidate_limit_is_enforced() {
    let p1 = presets::p1();
    let v = Voronoi::new(&p1).with_max_candidates(10);
    assert!(matches!(
        v.direction_cone_scan(&pt(&[1, 0]), &q(10_000, 1)),
        Err(EngineError::Source(SourceError::TooManyCandidates { .. }))
    ));
}
