//! Deterministic SVG figures of planar cells.

use std::cmp::Ordering;
use std::fmt::Write;

use lazyvor_core::{HRep, Point, Scalar, Vector};
use thiserror::Error;

/// Significant digits of rendered coordinates.
pub const DIGITS: u32 = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("SVG output needs dimension 2, got {0}")]
    Unsupported(usize),
    #[error("window must have lo < hi in both coordinates")]
    EmptyWindow,
}

#[derive(Clone, Debug)]
pub struct Style {
    pub stroke: String,
    pub fill: String,
    pub site: String,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: "#1f4e79".into(),
            fill: "#dce9f5".into(),
            site: "#000000".into(),
        }
    }
}

/// A site and, if it has one, the region drawn around it. Regions are
/// clipped to the window.
#[derive(Clone, Debug)]
pub struct SceneCell {
    pub site: Point,
    pub region: Option<HRep>,
}

#[derive(Clone, Debug)]
pub struct RenderScene {
    pub lo: Point,
    pub hi: Point,
    pub cells: Vec<SceneCell>,
    pub style: Style,
}

fn num(s: &Scalar) -> String {
    s.to_decimal(DIGITS)
}

/// Orders the vertices of a convex polygon counter-clockwise, starting from
/// the direction of the positive x-axis as seen from the centroid.
pub fn ccw_order(mut pts: Vec<Point>) -> Vec<Point> {
    if pts.is_empty() {
        return pts;
    }
    let k = Scalar::ratio(1, pts.len() as i64);
    let c = pts.iter().fold(Vector::zeros(2), |a, p| &a + p).scale(&k);
    let half = |d: &Vector| -> u8 {
        if d[1].is_negative() || (d[1].is_zero() && d[0].is_negative()) {
            1
        } else {
            0
        }
    };
    pts.sort_by(|a, b| {
        let (da, db) = (a - &c, b - &c);
        half(&da).cmp(&half(&db)).then_with(|| {
            let cross = &(&da[0] * &db[1]) - &(&da[1] * &db[0]);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

/// The window-clipped polygon of `region`, in counter-clockwise order.
pub fn clipped_polygon(region: &HRep, window: &HRep) -> Vec<Point> {
    ccw_order(region.intersect(window).to_vrep().vertices)
}

pub fn render_svg(scene: &RenderScene) -> Result<String, RenderError> {
    if scene.lo.dim() != 2 || scene.hi.dim() != 2 {
        return Err(RenderError::Unsupported(scene.lo.dim().max(scene.hi.dim())));
    }
    if let Some(c) = scene.cells.iter().find(|c| c.site.dim() != 2) {
        return Err(RenderError::Unsupported(c.site.dim()));
    }
    if scene.cells.iter().any(|c| c.region.as_ref().is_some_and(|r| r.dim() != 2)) {
        return Err(RenderError::Unsupported(0));
    }
    let (lo, hi) = (&scene.lo, &scene.hi);
    if lo[0] >= hi[0] || lo[1] >= hi[1] {
        return Err(RenderError::EmptyWindow);
    }
    let w = &hi[0] - &lo[0];
    let h = &hi[1] - &lo[1];
    let short = if w < h { w.clone() } else { h.clone() };
    let stroke_w = &short * &Scalar::ratio(1, 400);
    let dot_r = &short * &Scalar::ratio(1, 120);
    let window = HRep::axis_box(lo, hi).expect("2d window");

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        num(&lo[0]),
        num(&-&hi[1]),
        num(&w),
        num(&h)
    );
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\"/>",
        num(&lo[0]),
        num(&-&hi[1]),
        num(&w),
        num(&h),
        num(&stroke_w)
    );

    let paths: Vec<String> = scene
        .cells
        .iter()
        .filter_map(|c| c.region.as_ref())
        .map(|r| clipped_polygon(r, &window))
        .filter(|poly| poly.len() >= 3)
        .map(|poly| {
            let mut d = String::new();
            for (i, v) in poly.iter().enumerate() {
                let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(&v[0]), num(&-&v[1]));
            }
            d.push('Z');
            format!("<path d=\"{d}\"/>")
        })
        .collect();
    if !paths.is_empty() {
        let _ = writeln!(
            out,
            "<g fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
            scene.style.fill,
            scene.style.stroke,
            num(&stroke_w)
        );
        for p in paths {
            let _ = writeln!(out, "{p}");
        }
        out.push_str("</g>\n");
    }

    let sites: Vec<&Point> = scene
        .cells
        .iter()
        .map(|c| &c.site)
        .filter(|s| window.contains(s))
        .collect();
    if !sites.is_empty() {
        let _ = writeln!(out, "<g fill=\"{}\">", scene.style.site);
        for s in sites {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                num(&s[0]),
                num(&-&s[1]),
                num(&dot_r)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
