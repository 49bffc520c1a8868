//! Built-in point sets.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::expr::Expr;
use crate::scalar::{Scalar, Vector};
use crate::source::{ConeHint, Family, IndexRange, PointSource, SourcePart};

pub const NAMES: [&str; 3] = ["p1", "p2", "lattice-z2"];

fn family(vars: &[&str], range: IndexRange, coords: &[&str]) -> Family {
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    Family {
        coords: coords
            .iter()
            .map(|c| Expr::parse(c, &vars).expect("preset expression"))
            .collect(),
        vars,
        range,
        growth_c: Scalar::one(),
        growth_d: Scalar::zero(),
    }
}

/// The vertical line of integer points `(0, z)` plus `a = (1, 0)`. The cell
/// of `a` is not polyhedral: its direction cone is the open half-plane
/// `x < 0` together with the origin.
pub fn p1() -> PointSource {
    let a = Vector::from_ints(&[1, 0]);
    PointSource::new(
        2,
        vec![
            SourcePart::Family(family(&["z"], IndexRange::Integers, &["0", "z"])),
            SourcePart::Finite(vec![a.clone()]),
        ],
        vec![(
            a,
            ConeHint::NotClosed {
                limit_direction: Vector::from_ints(&[0, 1]),
                witness_part: 0,
            },
        )],
    )
    .expect("p1 preset is valid")
}

/// `(n, 1 - 1/n)` and `(-n, -1 + 1/n)` for `n >= 1`: every point is interior
/// to the hull although the hull is a strip.
pub fn p2() -> PointSource {
    PointSource::new(
        2,
        vec![
            SourcePart::Family(family(
                &["n"],
                IndexRange::NonNegative,
                &["n + 1", "1 - 1 / (n + 1)"],
            )),
            SourcePart::Family(family(
                &["n"],
                IndexRange::NonNegative,
                &["-n - 1", "-1 + 1 / (n + 1)"],
            )),
        ],
        vec![],
    )
    .expect("p2 preset is valid")
}

/// The integer lattice `Z^2`.
pub fn lattice_z2() -> PointSource {
    PointSource::new(
        2,
        vec![SourcePart::Family(family(
            &["i", "j"],
            IndexRange::Integers,
            &["i", "j"],
        ))],
        vec![],
    )
    .expect("lattice preset is valid")
}

pub fn by_name(name: &str) -> Option<PointSource> {
    match name {
        "p1" => Some(p1()),
        "p2" => Some(p2()),
        "lattice-z2" => Some(lattice_z2()),
        _ => None,
    }
}
