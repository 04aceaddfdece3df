//! Encapsulated PostScript figure placement.
//!
//! This crate reproduces, as a standalone library, the figure-inclusion
//! machinery that classic TeX documents drove through the BoxedEPS macro
//! package: it probes EPS files for their `%%BoundingBox` comment, runs the
//! same integer fixed-point arithmetic the macros ran to size, trim, scale,
//! and align the figure's reserved box, and emits the exact `\special`
//! escape strings expected by each of the historical DVI-to-PostScript
//! drivers the macros supported.
//!
//! The point of the exercise is bit fidelity. Every dimension is an integer
//! count of scaled points ([`scaled::ScaledDim`]), every division truncates,
//! and every decimal that crosses a textual boundary does so through the same
//! shortest-round-trip rendering the original used. Two runs on two machines
//! produce byte-identical reports.
//!
//! The pipeline, start to finish:
//!
//! 1. [`dsc::probe_file`] scans the EPS prolog for a bounding box and
//!    classifies the outcome (placeholder dimensions stand in on failure).
//! 2. [`directive::FigureDirective`] carries one inclusion request: file
//!    name, scale or forced dimension, trims, slides, alignment.
//! 3. [`layout::place`] turns probe + directive into a [`layout::Placement`]:
//!    box width, height above and depth below the baseline, and the anchor
//!    point where the figure's ink goes.
//! 4. [`drivers::emit`] renders the driver-specific escape lines.
//! 5. [`batch`] runs a whole [`manifest::Manifest`] of figures and collects
//!    [`report::Report`] records, in parallel when that cannot change the
//!    results.

pub mod batch;
pub mod directive;
pub mod drivers;
pub mod dsc;
pub mod layout;
pub mod manifest;
pub mod report;
pub mod scaled;

pub use directive::{Alignment, FigureDirective, SessionConfig};
pub use drivers::{DriverKind, SpecialEmission};
pub use dsc::{BBoxProbe, ProbeStatus};
pub use layout::Placement;
pub use manifest::Manifest;
pub use report::Report;
pub use scaled::{ScaledDim, Unit};
