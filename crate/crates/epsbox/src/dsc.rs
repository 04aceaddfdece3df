//! Bounding-box probing of Encapsulated PostScript prologs.
//!
//! An EPS file announces the region it paints in a document structuring
//! comment, `%%BoundingBox: llx lly urx ury`, near the top of the file. The
//! probe here reads the file the way the original inclusion macros read it:
//! line one is checked only for the PostScript signature `%!`, and the scan
//! for `BoundingBox:` starts on line two. The first line containing that
//! byte string wins, whatever comment name surrounds it, and nothing past it
//! is ever read.
//!
//! A probe never fails: files that are missing, not PostScript, or missing
//! their bounding box yield placeholder coordinates `0 0 100 100` plus the
//! historical warning text, and the caller decides how loudly to object.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::scaled::{ArithError, DecimalConstant, DecimalParseError, ScaledDim, Unit};

/// Longest decoded line the probe will consider. A prolog line longer than
/// this (binary preview garbage, usually) aborts the scan as if no
/// bounding-box line existed.
pub const MAX_LINE_BYTES: usize = 64 * 1024;

/// The stand-in bounding-box line used whenever probing fails.
pub const PLACEHOLDER_LINE: &str = " BoundingBox:0 0 100 100 ";

/// How a probe concluded.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProbeStatus {
    /// A bounding-box line was found and its coordinates captured.
    Found,
    /// The file could not be opened.
    MissingFile,
    /// Line one lacked the `%!` PostScript signature.
    NotPostScript,
    /// End of file (or an unscannable line) before any bounding-box comment.
    NoBBoxLine,
    /// The bounding box is deferred with `(atend)`, which a single forward
    /// pass of the prolog cannot honor.
    AtEnd,
}

impl ProbeStatus {
    /// True for every outcome that substitutes placeholder coordinates.
    pub fn is_placeholder(self) -> bool {
        self != ProbeStatus::Found
    }

    /// Stable lowercase token for reports.
    pub fn name(self) -> &'static str {
        match self {
            ProbeStatus::Found => "found",
            ProbeStatus::MissingFile => "missing_file",
            ProbeStatus::NotPostScript => "not_postscript",
            ProbeStatus::NoBBoxLine => "no_bbox_line",
            ProbeStatus::AtEnd => "atend",
        }
    }
}

impl std::fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of probing one EPS file.
///
/// The four coordinates are kept as the raw text tokens from the file; they
/// are not parsed until [`natural_dims`] needs numbers, because one driver
/// wants them verbatim. On any placeholder status the tokens are
/// `0 0 100 100` and `raw_line` is [`PLACEHOLDER_LINE`], except that an
/// `(atend)` probe keeps the line it actually matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBoxProbe {
    pub status: ProbeStatus,
    pub llx: String,
    pub lly: String,
    pub urx: String,
    pub ury: String,
    pub raw_line: String,
}

impl BBoxProbe {
    fn placeholder(status: ProbeStatus, raw_line: &str) -> BBoxProbe {
        BBoxProbe {
            status,
            llx: "0".to_string(),
            lly: "0".to_string(),
            urx: "100".to_string(),
            ury: "100".to_string(),
            raw_line: raw_line.to_string(),
        }
    }

    /// The coordinate tokens in `llx lly urx ury` order.
    pub fn tokens(&self) -> [&str; 4] {
        [&self.llx, &self.lly, &self.urx, &self.ury]
    }
}

/// One decoded prolog line, or the marker for a line too long to scan.
enum ProbeLine {
    Text(String),
    TooLong,
}

/// Decodes a terminator-free raw line: Latin-1 bytes to characters, with
/// every run of spaces and tabs collapsed to a single space.
fn decode_line(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    let mut in_blank = false;
    for &b in bytes {
        if b == b' ' || b == b'\t' {
            if !in_blank {
                out.push(' ');
            }
            in_blank = true;
        } else {
            out.push(char::from(b));
            in_blank = false;
        }
    }
    out
}

/// Reads one line of raw bytes, honoring LF, CRLF, and lone-CR terminators.
/// Returns `None` at end of input;  I/O errors end the input early, which a
/// probe treats like end of file. Lines beyond [`MAX_LINE_BYTES`] come back
/// as [`ProbeLine::TooLong`] with the remainder of the line consumed.
fn read_probe_line<R: BufRead>(reader: &mut R) -> Option<ProbeLine> {
    let mut line: Vec<u8> = Vec::new();
    let mut too_long = false;
    let mut saw_any = false;
    loop {
        let buf = match reader.fill_buf() {
            Ok(b) => b,
            Err(_) => break,
        };
        if buf.is_empty() {
            break;
        }
        saw_any = true;
        match buf.iter().position(|&b| b == b'\n' || b == b'\r') {
            Some(idx) => {
                let terminator = buf[idx];
                if !too_long {
                    line.extend_from_slice(&buf[..idx]);
                }
                reader.consume(idx + 1);
                if terminator == b'\r' {
                    // Swallow the LF half of a CRLF pair.
                    if let Ok(buf) = reader.fill_buf() {
                        if buf.first() == Some(&b'\n') {
                            reader.consume(1);
                        }
                    }
                }
                break;
            }
            None => {
                let len = buf.len();
                if !too_long {
                    line.extend_from_slice(buf);
                }
                reader.consume(len);
            }
        }
        if line.len() > MAX_LINE_BYTES {
            too_long = true;
            line.clear();
        }
    }
    if !saw_any && line.is_empty() && !too_long {
        return None;
    }
    if too_long || line.len() > MAX_LINE_BYTES {
        Some(ProbeLine::TooLong)
    } else {
        Some(ProbeLine::Text(decode_line(&line)))
    }
}

fn warn_missing(file_spec: &str) -> Vec<String> {
    vec![
        format!(" !!! EPS FILE {file_spec} WAS NOT FOUND !!!"),
        " !!! Will use placeholder !!!".to_string(),
    ]
}

fn warn_not_postscript(file_name: &str) -> Vec<String> {
    vec![
        format!(" !!! {file_name} not PS! !!!"),
        " !!! Will use placeholder !!!".to_string(),
    ]
}

fn warn_no_bbox(file_spec: &str) -> Vec<String> {
    vec![
        format!(" !!! BoundingBox NOT FOUND IN {file_spec} !!! "),
        " !!! Will use placeholder !!!".to_string(),
    ]
}

fn warn_atend(file_spec: &str) -> Vec<String> {
    vec![
        format!(" !!! BoundingBox not found in {file_spec} !!!"),
        " !!! It must not be at end of EPSF !!!".to_string(),
        " !!! Will use placeholder !!!".to_string(),
    ]
}

/// The warning lines a probe with this status produces; `Found` yields none.
///
/// Probing already hands these back alongside the probe, but later pipeline
/// stages that only hold the probe can rebuild them, since the text depends
/// on nothing but the status and the names.
pub fn status_warnings(status: ProbeStatus, file_spec: &str, file_name: &str) -> Vec<String> {
    match status {
        ProbeStatus::Found => Vec::new(),
        ProbeStatus::MissingFile => warn_missing(file_spec),
        ProbeStatus::NotPostScript => warn_not_postscript(file_name),
        ProbeStatus::NoBBoxLine => warn_no_bbox(file_spec),
        ProbeStatus::AtEnd => warn_atend(file_spec),
    }
}

/// Core scan over decoded lines. `file_spec` is the full name used in most
/// warnings; `file_name` is the bare name the not-PostScript warning uses.
fn probe_line_stream<I>(mut lines: I, file_spec: &str, file_name: &str) -> (BBoxProbe, Vec<String>)
where
    I: Iterator<Item = ProbeLine>,
{
    // Line one carries the signature check and nothing else; the
    // bounding-box scan starts at line two even if line one contains one.
    let first = match lines.next() {
        Some(ProbeLine::Text(text)) => text,
        Some(ProbeLine::TooLong) => {
            return (
                BBoxProbe::placeholder(ProbeStatus::NoBBoxLine, PLACEHOLDER_LINE),
                warn_no_bbox(file_spec),
            )
        }
        // An empty file reads as an empty first line.
        None => String::new(),
    };
    if !first.contains("%!") {
        return (
            BBoxProbe::placeholder(ProbeStatus::NotPostScript, PLACEHOLDER_LINE),
            warn_not_postscript(file_name),
        );
    }
    loop {
        let line = match lines.next() {
            Some(ProbeLine::Text(text)) => text,
            Some(ProbeLine::TooLong) | None => {
                return (
                    BBoxProbe::placeholder(ProbeStatus::NoBBoxLine, PLACEHOLDER_LINE),
                    warn_no_bbox(file_spec),
                )
            }
        };
        let Some(at) = line.find("BoundingBox:") else {
            continue;
        };
        let tail = line[at + "BoundingBox:".len()..].trim_start_matches(' ');
        if tail.contains("atend") {
            return (
                BBoxProbe::placeholder(ProbeStatus::AtEnd, &line),
                warn_atend(file_spec),
            );
        }
        let mut tokens = tail.split(' ').filter(|t| !t.is_empty());
        let mut take = || tokens.next().unwrap_or("").to_string();
        return (
            BBoxProbe {
                status: ProbeStatus::Found,
                llx: take(),
                lly: take(),
                urx: take(),
                ury: take(),
                raw_line: line.clone(),
            },
            Vec::new(),
        );
    }
}

/// Probes an already-opened byte stream.
pub fn probe_reader<R: Read>(reader: R, file_spec: &str, file_name: &str) -> (BBoxProbe, Vec<String>) {
    let mut reader = BufReader::new(reader);
    probe_line_stream(
        std::iter::from_fn(move || read_probe_line(&mut reader)),
        file_spec,
        file_name,
    )
}

/// Probes the EPS file at `path`. A file that cannot be opened yields the
/// `missing_file` placeholder; no other I/O outcome is an error either.
pub fn probe_file(path: &Path, file_spec: &str, file_name: &str) -> (BBoxProbe, Vec<String>) {
    match std::fs::File::open(path) {
        Ok(file) => probe_reader(file, file_spec, file_name),
        Err(_) => (
            BBoxProbe::placeholder(ProbeStatus::MissingFile, PLACEHOLDER_LINE),
            warn_missing(file_spec),
        ),
    }
}

/// Probes pre-split text lines; the test-friendly entry point. Each line is
/// collapsed and length-checked exactly as file lines are.
pub fn probe_str_lines<'a, I>(lines: I, file_spec: &str, file_name: &str) -> (BBoxProbe, Vec<String>)
where
    I: IntoIterator<Item = &'a str>,
{
    probe_line_stream(
        lines.into_iter().map(|l| {
            if l.len() > MAX_LINE_BYTES {
                ProbeLine::TooLong
            } else {
                ProbeLine::Text(decode_line(l.as_bytes()))
            }
        }),
        file_spec,
        file_name,
    )
}

/// Natural (untrimmed, unscaled) figure dimensions derived from a probe.
///
/// Width and height are formed as two independent big-point conversions
/// subtracted in scaled points, not as one conversion of the difference.
/// The origin shift is the displacement that moves the figure's lower-left
/// bounding-box corner to the reference point, for drivers that render
/// relative to the PostScript origin; it is zero for the others.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NaturalDims {
    pub width: ScaledDim,
    pub height: ScaledDim,
    /// Copies of width and height from before any trimming. Trims shrink the
    /// working pair; one driver (dvitops) reads the untrimmed values.
    pub untrimmed_width: ScaledDim,
    pub untrimmed_height: ScaledDim,
    pub origin_shift_x: ScaledDim,
    pub origin_shift_y: ScaledDim,
}

/// Errors from turning probe tokens into dimensions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NaturalDimsError {
    #[error("bounding-box {role} coordinate {token:?}: {source}")]
    BadToken {
        role: &'static str,
        token: String,
        source: DecimalParseError,
    },
    #[error("bounding-box {role} coordinate {token:?}: {source}")]
    TokenRange {
        role: &'static str,
        token: String,
        source: ArithError,
    },
    #[error("bounding-box span: {0}")]
    Span(ArithError),
}

fn coord(role: &'static str, token: &str) -> Result<ScaledDim, NaturalDimsError> {
    let constant: DecimalConstant = token.parse().map_err(|source| NaturalDimsError::BadToken {
        role,
        token: token.to_string(),
        source,
    })?;
    constant
        .to_dim(Unit::Bp)
        .map_err(|source| NaturalDimsError::TokenRange {
            role,
            token: token.to_string(),
            source,
        })
}

/// Converts the probe's coordinate tokens to natural dimensions.
///
/// `ps_origin` says whether the target driver places figures relative to the
/// PostScript origin (so the lower-left corner must be shifted away).
pub fn natural_dims(probe: &BBoxProbe, ps_origin: bool) -> Result<NaturalDims, NaturalDimsError> {
    let llx = coord("llx", &probe.llx)?;
    let lly = coord("lly", &probe.lly)?;
    let urx = coord("urx", &probe.urx)?;
    let ury = coord("ury", &probe.ury)?;
    let width = urx.try_sub(llx).map_err(NaturalDimsError::Span)?;
    let height = ury.try_sub(lly).map_err(NaturalDimsError::Span)?;
    let (origin_shift_x, origin_shift_y) = if ps_origin {
        (-llx, -lly)
    } else {
        (ScaledDim::ZERO, ScaledDim::ZERO)
    };
    Ok(NaturalDims {
        width,
        height,
        untrimmed_width: width,
        untrimmed_height: height,
        origin_shift_x,
        origin_shift_y,
    })
}
