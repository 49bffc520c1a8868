//! The `lazyvor` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lazyvor_core::{
    lex_cmp, presets, CellKind, EngineError, HRep, Point, PointSource, Scalar, Vector, Voronoi,
    DEFAULT_MAX_CANDIDATES,
};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::report;
use crate::spec::{self, SpecError};
use crate::svg::{render_svg, RenderError, RenderScene, SceneCell, Style};

pub const MAX_CANDIDATES_VAR: &str = "LAZYVOR_MAX_CANDIDATES";
pub const DEFAULT_MAX_RADIUS_SQ: i64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "lazyvor", version, about = "Exact Voronoi cells of discrete point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// JSON source spec.
    #[arg(long, value_name = "FILE")]
    source: Option<PathBuf>,
    /// Built-in source: p1, p2 or lattice-z2.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inner/boundary classification of a site.
    Classify {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        max_radius_sq: Option<String>,
    },
    /// The direction cone scanned within a radius.
    Cone {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        radius_sq: String,
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        stabilize_to: Option<String>,
    },
    /// The Voronoi cell of a site.
    Cell {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        max_radius_sq: Option<String>,
        /// Intersect with the box x0,y0,x1,y1 instead of classifying.
        #[arg(long, value_name = "x0,y0,x1,y1", allow_hyphen_values = true)]
        truncate: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Truncated cells of every site inside a window, as one SVG.
    Diagram {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_name = "x0,y0,x1,y1", allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Writes a built-in source spec.
    Preset {
        name: String,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec { path: PathBuf, source: SpecError },
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(_) => 1,
            _ => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn rational(s: &str, what: &str) -> Result<Scalar, CliError> {
    s.parse().map_err(|e| usage(format!("{what}: {e}")))
}

fn csv(s: &str, what: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').map(|c| rational(c, what)).collect()
}

fn point(s: &str, src: &PointSource) -> Result<Point, CliError> {
    let p = Vector::new(csv(s, "--point")?);
    if p.dim() != src.dim() {
        return Err(usage(format!(
            "--point has {} coordinates, the source has dimension {}",
            p.dim(),
            src.dim()
        )));
    }
    Ok(p)
}

fn window(s: &str, what: &str) -> Result<(Point, Point), CliError> {
    let c = csv(s, what)?;
    let [x0, y0, x1, y1]: [Scalar; 4] = c
        .try_into()
        .map_err(|_| usage(format!("{what} takes four numbers x0,y0,x1,y1")))?;
    if x0 >= x1 || y0 >= y1 {
        return Err(usage(format!("{what} needs x0 < x1 and y0 < y1")));
    }
    Ok((Vector::new(vec![x0, y0]), Vector::new(vec![x1, y1])))
}

fn load(args: &SourceArgs) -> Result<PointSource, CliError> {
    if let Some(name) = &args.preset {
        return presets::by_name(name).ok_or_else(|| unknown_preset(name));
    }
    let path = args.source.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    spec::parse_source(&text).map_err(|source| CliError::Spec {
        path: path.clone(),
        source,
    })
}

fn unknown_preset(name: &str) -> CliError {
    usage(format!(
        "unknown preset {name:?}, expected one of {}",
        presets::NAMES.join(", ")
    ))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn max_candidates() -> Result<usize, CliError> {
    match std::env::var(MAX_CANDIDATES_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{MAX_CANDIDATES_VAR}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
    }
}

fn max_radius(s: &Option<String>) -> Result<Scalar, CliError> {
    match s {
        Some(s) => {
            let r = rational(s, "--max-radius-sq")?;
            if !r.is_positive() {
                return Err(usage("--max-radius-sq must be positive"));
            }
            Ok(r)
        }
        None => Ok(Scalar::from_int(DEFAULT_MAX_RADIUS_SQ)),
    }
}

/// Sites in the closed box, sorted lexicographically.
fn sites_in_box(vor: &Voronoi, lo: &Point, hi: &Point) -> Result<Vec<Point>, CliError> {
    let half = Scalar::ratio(1, 2);
    let center = (lo + hi).scale(&half);
    let r2 = center.dist_sq(hi);
    let b = HRep::axis_box(lo, hi).expect("2d box");
    let mut pts: Vec<Point> = vor
        .source()
        .points_in_ball_limited(&center, &r2, Some(max_candidates()?))
        .map_err(EngineError::from)?
        .into_iter()
        .filter(|q| b.contains(q))
        .collect();
    pts.sort_by(lex_cmp);
    Ok(pts)
}

fn cell_svg(vor: &Voronoi, result: &lazyvor_core::CellResult, trunc: Option<&(Point, Point)>) -> Result<String, CliError> {
    if vor.source().dim() != 2 {
        return Err(RenderError::Unsupported(vor.source().dim()).into());
    }
    let (lo, hi) = match trunc {
        Some(w) => w.clone(),
        None => {
            let v = match (&result.kind, &result.vrep) {
                (CellKind::Polytope, Some(v)) => v,
                _ => {
                    return Err(usage(format!(
                        "a {} cell needs --truncate to be drawn",
                        result.kind.as_str()
                    )))
                }
            };
            let coord = |k: usize, max: bool| {
                v.vertices
                    .iter()
                    .map(|x| x[k].clone())
                    .reduce(|a, b| if (b > a) == max { b } else { a })
                    .expect("polytope has vertices")
            };
            let (mut lo, mut hi) = (
                Vector::new(vec![coord(0, false), coord(1, false)]),
                Vector::new(vec![coord(0, true), coord(1, true)]),
            );
            let pad = Scalar::ratio(1, 10);
            let dx = &(&hi[0] - &lo[0]) * &pad;
            let dy = &(&hi[1] - &lo[1]) * &pad;
            lo = Vector::new(vec![&lo[0] - &dx, &lo[1] - &dy]);
            hi = Vector::new(vec![&hi[0] + &dx, &hi[1] + &dy]);
            (lo, hi)
        }
    };
    let mut cells: Vec<SceneCell> = sites_in_box(vor, &lo, &hi)?
        .into_iter()
        .filter(|q| q != &result.site)
        .map(|site| SceneCell { site, region: None })
        .collect();
    cells.push(SceneCell {
        site: result.site.clone(),
        region: result.hrep.clone(),
    });
    Ok(render_svg(&RenderScene {
        lo,
        hi,
        cells,
        style: Style::default(),
    })?)
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let emit = |out: &mut dyn Write, text: String| {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    };
    match cmd {
        Command::Preset { name, out: path } => {
            let src = presets::by_name(&name).ok_or_else(|| unknown_preset(&name))?;
            write_file(&path, &spec::render_source(&src))
        }
        Command::Classify {
            src,
            point: pt,
            max_radius_sq,
        } => {
            let src = load(&src)?;
            let p = point(&pt, &src)?;
            let r2 = max_radius(&max_radius_sq)?;
            let vor = Voronoi::new(&src).with_max_candidates(max_candidates()?);
            let c = vor.classify(&p, &r2)?;
            emit(out, report::to_text(&report::classification(&c)))
        }
        Command::Cone {
            src,
            point: pt,
            radius_sq,
            stabilize_to,
        } => {
            let src = load(&src)?;
            let p = point(&pt, &src)?;
            let r1 = rational(&radius_sq, "--radius-sq")?;
            let vor = Voronoi::new(&src).with_max_candidates(max_candidates()?);
            let scan = vor.direction_cone_scan(&p, &r1)?;
            let v = match stabilize_to {
                Some(s) => {
                    let r2 = rational(&s, "--stabilize-to")?;
                    if r2 < r1 {
                        return Err(EngineError::RadiusOrder.into());
                    }
                    let larger = vor.direction_cone_scan(&p, &r2)?;
                    let same = scan.equals(&larger);
                    report::cone(&p, &r1, &scan, Some((&r2, &larger, same)))
                }
                None => report::cone(&p, &r1, &scan, None),
            };
            emit(out, report::to_text(&v))
        }
        Command::Cell {
            src,
            point: pt,
            max_radius_sq,
            truncate,
            out: path,
            svg,
        } => {
            let src = load(&src)?;
            let p = point(&pt, &src)?;
            let r2 = max_radius(&max_radius_sq)?;
            let trunc = truncate.as_deref().map(|t| window(t, "--truncate")).transpose()?;
            if trunc.is_some() && src.dim() != 2 {
                return Err(usage("--truncate needs a 2-dimensional source"));
            }
            let vor = Voronoi::new(&src).with_max_candidates(max_candidates()?);
            let result = match &trunc {
                Some((lo, hi)) => {
                    vor.cell_truncated(&p, &HRep::axis_box(lo, hi).expect("2d box"))?
                }
                None => vor.cell(&p, &r2)?,
            };
            let figure = svg.as_ref().map(|_| cell_svg(&vor, &result, trunc.as_ref())).transpose()?;
            let text = report::to_text(&report::cell(&result));
            match path {
                Some(path) => write_file(&path, &text)?,
                None => emit(out, text)?,
            }
            if let (Some(path), Some(figure)) = (svg, figure) {
                write_file(&path, &figure)?;
            }
            Ok(())
        }
        Command::Diagram {
            src,
            window: w,
            out: path,
        } => {
            let src = load(&src)?;
            if src.dim() != 2 {
                return Err(RenderError::Unsupported(src.dim()).into());
            }
            let (lo, hi) = window(&w, "--window")?;
            let vor = Voronoi::new(&src).with_max_candidates(max_candidates()?);
            let b = HRep::axis_box(&lo, &hi).expect("2d box");
            let sites = sites_in_box(&vor, &lo, &hi)?;
            let inside: Vec<&Point> = sites
                .iter()
                .filter(|q| b.halfspaces().iter().all(|h| h.strictly_contains(q)))
                .collect();
            let results = inside
                .par_iter()
                .map(|q| vor.cell_truncated(q, &b))
                .collect::<Result<Vec<_>, _>>()?;
            let mut cells: Vec<SceneCell> = sites
                .iter()
                .filter(|q| !inside.contains(q))
                .map(|q| SceneCell {
                    site: q.clone(),
                    region: None,
                })
                .collect();
            cells.extend(results.iter().map(|r| SceneCell {
                site: r.site.clone(),
                region: r.hrep.clone(),
            }));
            let figure = render_svg(&RenderScene {
                lo: lo.clone(),
                hi: hi.clone(),
                cells,
                style: Style::default(),
            })?;
            write_file(&path, &figure)?;
            let summary = json!({
                "window": [report::vector(&lo), report::vector(&hi)],
                "cells": results.iter().map(|r| json!({
                    "site": report::vector(&r.site),
                    "facets": r.hrep.as_ref().map_or(0, |h| h.len()),
                    "relevant_points": report::vectors(&r.relevant_points),
                    "vertices": r.vrep.as_ref().map(|v| report::vectors(&v.vertices)),
                })).collect::<Vec<_>>(),
            });
            emit(out, report::to_text(&summary))
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 on domain errors, 2 on spec or usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "lazyvor: {}", line.trim_start_matches("error: "));
            return 2;
        }
    };
    match run_command(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "lazyvor: {e}");
            e.exit_code()
        }
    }
}
