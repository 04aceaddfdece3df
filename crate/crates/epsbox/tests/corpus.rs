//! Probing a corpus of checked-in EPS prologs.
//!
//! Each fixture under `tests/corpus/` exercises one probe behavior: status,
//! extracted coordinate tokens, raw line capture, and the exact warning
//! lines. The dimension checks then confirm that placeholder probes measure
//! exactly like a real 100 by 100 big-point figure.

mod common;

use std::path::PathBuf;

use epsbox::dsc::{natural_dims, probe_file, BBoxProbe, ProbeStatus};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/corpus")
        .join(name)
}

/// Probes a fixture under its own name, as the pipeline would after
/// resolving an empty directory prefix.
fn probe(name: &str) -> (BBoxProbe, Vec<String>) {
    probe_file(&corpus(name), name, name)
}

#[test]
fn well_formed_header_is_found() {
    let (probe, warnings) = probe("found.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["10", "20", "110", "220"]);
    assert_eq!(probe.raw_line, "%%BoundingBox: 10 20 110 220");
    assert!(warnings.is_empty());
}

#[test]
fn missing_file_uses_placeholder() {
    let (probe, warnings) = probe("definitely_absent.eps");
    assert_eq!(probe.status, ProbeStatus::MissingFile);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
    assert_eq!(
        warnings,
        [
            " !!! EPS FILE definitely_absent.eps WAS NOT FOUND !!!",
            " !!! Will use placeholder !!!",
        ]
    );
}

#[test]
fn non_postscript_first_line_uses_placeholder() {
    let (probe, warnings) = probe("not_postscript.eps");
    assert_eq!(probe.status, ProbeStatus::NotPostScript);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
    assert_eq!(
        warnings,
        [
            " !!! not_postscript.eps not PS! !!!",
            " !!! Will use placeholder !!!",
        ]
    );
}

#[test]
fn header_without_bounding_box_uses_placeholder() {
    let (probe, warnings) = probe("no_bbox.eps");
    assert_eq!(probe.status, ProbeStatus::NoBBoxLine);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
    assert_eq!(
        warnings,
        [
            " !!! BoundingBox NOT FOUND IN no_bbox.eps !!! ",
            " !!! Will use placeholder !!!",
        ]
    );
}

#[test]
fn deferred_bounding_box_uses_placeholder() {
    let (probe, warnings) = probe("atend.eps");
    assert_eq!(probe.status, ProbeStatus::AtEnd);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
    // The scan stops at the (atend) marker; the real trailer box two lines
    // later is never reached.
    assert_eq!(probe.raw_line, "%%BoundingBox: (atend)");
    assert_eq!(
        warnings,
        [
            " !!! BoundingBox not found in atend.eps !!!",
            " !!! It must not be at end of EPSF !!!",
            " !!! Will use placeholder !!!",
        ]
    );
}

#[test]
fn decimal_coordinates_pass_through_raw() {
    let (probe, warnings) = probe("decimal.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["0.5", "1.5", "100.25", "200.75"]);
    assert!(warnings.is_empty());
}

#[test]
fn negative_coordinates_pass_through_raw() {
    let (probe, _) = probe("negative.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["-10", "-10", "90", "90"]);
}

#[test]
fn page_bounding_box_line_wins_the_substring_scan() {
    // %%PageBoundingBox: contains "BoundingBox:" as a substring, so the
    // first line carrying it satisfies the scan before the real
    // %%BoundingBox line does.
    let (probe, warnings) = probe("page_collision.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["5", "5", "50", "50"]);
    assert_eq!(probe.raw_line, "%%PageBoundingBox: 5 5 50 50");
    assert!(warnings.is_empty());
}

#[test]
fn only_first_four_tokens_are_taken() {
    let (probe, _) = probe("tail_tokens.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
}

#[test]
fn first_line_is_only_checked_for_the_magic_bytes() {
    // The bounding box on line one is invisible to the scan, which starts
    // at line two.
    let (probe, _) = probe("first_line_bbox.eps");
    assert_eq!(probe.status, ProbeStatus::NoBBoxLine);
    assert_eq!(probe.tokens(), ["0", "0", "100", "100"]);
}

#[test]
fn carriage_return_terminators_are_honored() {
    let (probe, _) = probe("crlf.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["3", "4", "33", "44"]);
}

#[test]
fn tabs_and_space_runs_collapse_to_single_spaces() {
    let (probe, _) = probe("tabs.eps");
    assert_eq!(probe.status, ProbeStatus::Found);
    assert_eq!(probe.tokens(), ["7", "8", "99", "100"]);
    assert_eq!(probe.raw_line, "%%BoundingBox: 7 8 99 100");
}

#[test]
fn placeholders_measure_like_a_hundred_point_square() {
    let (reference, _) = probe("found.eps");
    let reference = BBoxProbe {
        llx: "0".to_string(),
        lly: "0".to_string(),
        urx: "100".to_string(),
        ury: "100".to_string(),
        ..reference
    };
    let expected = natural_dims(&reference, false).unwrap();
    assert_eq!(expected.width.sp(), 6_578_176);
    assert_eq!(expected.height.sp(), 6_578_176);

    for name in ["definitely_absent.eps", "not_postscript.eps", "no_bbox.eps", "atend.eps"] {
        let (placeholder, _) = probe(name);
        assert!(placeholder.status.is_placeholder(), "{name} should be a placeholder");
        assert_eq!(
            natural_dims(&placeholder, false).unwrap(),
            expected,
            "{name} placeholder dims",
        );
    }
}

#[test]
fn oracle_agrees_on_corpus_spans() {
    // found.eps: width 110bp - 10bp, height 220bp - 20bp, each corner
    // converted independently.
    let (pr, _) = probe("found.eps");
    let dims = natural_dims(&pr, false).unwrap();
    let w = common::or_dim_bp("110").unwrap() - common::or_dim_bp("10").unwrap();
    let h = common::or_dim_bp("220").unwrap() - common::or_dim_bp("20").unwrap();
    assert_eq!(dims.width.sp(), w);
    assert_eq!(dims.height.sp(), h);

    // decimal.eps spans cross the fraction-fold path.
    let (pr, _) = probe("decimal.eps");
    let dims = natural_dims(&pr, false).unwrap();
    let w = common::or_dim_bp("100.25").unwrap() - common::or_dim_bp("0.5").unwrap();
    let h = common::or_dim_bp("200.75").unwrap() - common::or_dim_bp("1.5").unwrap();
    assert_eq!(dims.width.sp(), w);
    assert_eq!(dims.height.sp(), h);
}
