//! Source specs, JSON reports, SVG figures and the command line for
//! `lazyvor-core`.

pub mod cli;
pub mod report;
pub mod spec;
pub mod svg;
