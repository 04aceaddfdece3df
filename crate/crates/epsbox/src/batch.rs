//! Batch placement: run every entry of a manifest against the filesystem.
//!
//! Placement is pure, and manifest parsing already resolves each entry's
//! effective force, so entries are independent once parsed. Batches run in
//! parallel when the `parallel` feature is on and no entry carries a
//! persistent force; a persistent force falls back to sequential placement,
//! preserving the historical strictly-ordered threading. Both paths produce
//! identical reports in manifest order.

use std::path::Path;

use crate::directive::FigureDirective;
use crate::dsc::{probe_file, BBoxProbe};
use crate::manifest::Manifest;
use crate::report::{Report, ReportError};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A failed entry aborts the batch; the index is 1-based in manifest order.
#[derive(Debug, thiserror::Error)]
#[error("entry {index} ({file_spec}): {source}")]
pub struct BatchError {
    pub index: usize,
    pub file_spec: String,
    pub source: ReportError,
}

/// Probes the entry's file, resolving relative specs against `base_dir`.
/// Absolute specs ignore `base_dir`. Probe warnings are not returned; the
/// report rebuilds them from the status.
pub fn probe_entry(directive: &FigureDirective, base_dir: &Path) -> BBoxProbe {
    let path = base_dir.join(&directive.file_spec);
    probe_file(&path, &directive.file_spec, &directive.file_name).0
}

fn build_one(
    index: usize,
    entry: &FigureDirective,
    manifest: &Manifest,
    base_dir: &Path,
) -> Result<Report, BatchError> {
    let probe = probe_entry(entry, base_dir);
    Report::build(entry, &manifest.config, &probe).map_err(|source| BatchError {
        index: index + 1,
        file_spec: entry.file_spec.clone(),
        source,
    })
}

/// Places every entry in order on the current thread.
pub fn run_sequential(manifest: &Manifest, base_dir: &Path) -> Result<Vec<Report>, BatchError> {
    manifest
        .entries
        .iter()
        .enumerate()
        .map(|(index, entry)| build_one(index, entry, manifest, base_dir))
        .collect()
}

/// Places entries across the rayon pool; reports come back in manifest
/// order, and on failure the earliest failing entry wins.
#[cfg(feature = "parallel")]
pub fn run_parallel(manifest: &Manifest, base_dir: &Path) -> Result<Vec<Report>, BatchError> {
    let results: Vec<Result<Report, BatchError>> = manifest
        .entries
        .par_iter()
        .enumerate()
        .map(|(index, entry)| build_one(index, entry, manifest, base_dir))
        .collect();
    results.into_iter().collect()
}

/// Places every entry, picking the widest strategy the manifest allows.
pub fn run(manifest: &Manifest, base_dir: &Path) -> Result<Vec<Report>, BatchError> {
    #[cfg(feature = "parallel")]
    if !manifest.has_persistent_force() {
        return run_parallel(manifest, base_dir);
    }
    run_sequential(manifest, base_dir)
}
