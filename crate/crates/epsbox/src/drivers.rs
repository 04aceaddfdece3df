//! Escape-string emission for the historical DVI driver dialects.
//!
//! Every driver family invented its own `\special` syntax for pulling a
//! PostScript file into a page. This module renders those strings byte for
//! byte: quoting, spacing (including a few load-bearing trailing spaces),
//! and the exact numeric forms each dialect expects.
//!
//! All numbers derive from the figure's resolved scale `S`, rendered as a
//! decimal (`"1000.0"` is unit scale). From it:
//!
//! * `I`: the text of `S` before its first `.` (a textual split, not a
//!   rounding),
//! * `K`: `S` read back as points, divided by 1000, re-rendered (a unit
//!   scale factor, `"1.0"`),
//! * `P`: the same with 1000 replaced by 10 (a percentage, `"100.0"`).
//!
//! Some dialects also consume the magnification `M`, the untrimmed natural
//! dimensions (rescaled by `S/1000`), or the raw lower-left bounding-box
//! tokens. Everything else in the context is ignored, and emission is a pure
//! function of its inputs.

use crate::scaled::{ArithError, DecimalConstant, DecimalParseError, ScaledDim, Unit};

/// The driver dialects with distinct emission or origin behavior.
///
/// `dvipsone` and `dvialw` are accepted as aliases of [`DriverKind::UnixCoop`]
/// and [`DriverKind::Beebe`] respectively; they were separate products with
/// identical escape syntax.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DriverKind {
    /// Textures (Macintosh): `illustration` special, integer scale.
    Textures,
    /// The Unix TeX cooperative dvips lineage: `psfile=` with unit `hscale`.
    UnixCoop,
    /// Rokicki's dvips: quoted `psfile=` with percentage scales.
    Rokicki,
    /// Rokicki dialect with inline `ps::[begin]`/`ps::[end]` TexFig framing.
    InlineRokicki,
    /// OzTeX (Macintosh): `epsf=` with quoted name.
    OzTex,
    /// Lis's dvi2ps: `pstext=`/`psfile=` TexFig framing.
    Lis,
    /// psprint (Trevorrow): a bare PostScript fragment with translate.
    PsPrint,
    /// Textset/Arbor dvips: `ps: epsfile` with integer scale.
    Arbor,
    /// J. Clark's dvitops: `import` with rescaled point dimensions.
    Clark,
    /// Beebe's DVIALW lineage: keyworded `language "PS"` special.
    Beebe,
    /// Northlake Software's TeXview: `insert` with magnification.
    Northlake,
    /// Bechtolsheim's dvitps: `Include`/`Literal` directives.
    BechtolsheimDvitps,
    /// The same dialect with the `DVI2PS: ` tag.
    BechtolsheimDvi2ps,
    /// No driver chosen; emits nothing and warns.
    StandardUnset,
}

impl DriverKind {
    /// Every kind, in report order.
    pub const ALL: [DriverKind; 14] = [
        DriverKind::Textures,
        DriverKind::UnixCoop,
        DriverKind::Rokicki,
        DriverKind::InlineRokicki,
        DriverKind::OzTex,
        DriverKind::Lis,
        DriverKind::PsPrint,
        DriverKind::Arbor,
        DriverKind::Clark,
        DriverKind::Beebe,
        DriverKind::Northlake,
        DriverKind::BechtolsheimDvitps,
        DriverKind::BechtolsheimDvi2ps,
        DriverKind::StandardUnset,
    ];

    /// Stable lowercase name used by reports and command-line flags.
    pub fn name(self) -> &'static str {
        match self {
            DriverKind::Textures => "textures",
            DriverKind::UnixCoop => "unix-coop",
            DriverKind::Rokicki => "rokicki",
            DriverKind::InlineRokicki => "inline-rokicki",
            DriverKind::OzTex => "oztex",
            DriverKind::Lis => "lis",
            DriverKind::PsPrint => "psprint",
            DriverKind::Arbor => "arbor",
            DriverKind::Clark => "clark",
            DriverKind::Beebe => "beebe",
            DriverKind::Northlake => "northlake",
            DriverKind::BechtolsheimDvitps => "bechtolsheim-dvitps",
            DriverKind::BechtolsheimDvi2ps => "bechtolsheim-dvi2ps",
            DriverKind::StandardUnset => "standard-unset",
        }
    }

    /// Parses a driver name or alias, case-insensitively. Underscores are
    /// accepted in place of hyphens.
    pub fn from_name(name: &str) -> Option<DriverKind> {
        let lowered = name.to_ascii_lowercase().replace('_', "-");
        let canonical = match lowered.as_str() {
            "dvipsone" => "unix-coop",
            "dvialw" => "beebe",
            other => other,
        };
        DriverKind::ALL
            .iter()
            .copied()
            .find(|kind| kind.name() == canonical)
    }

    /// Whether this driver renders figures relative to the PostScript
    /// origin, so placements must shift the lower-left bounding-box corner
    /// to the reference point.
    pub fn ps_origin(self) -> bool {
        match self {
            DriverKind::UnixCoop
            | DriverKind::Rokicki
            | DriverKind::InlineRokicki
            | DriverKind::OzTex
            | DriverKind::Lis
            | DriverKind::Northlake
            | DriverKind::BechtolsheimDvitps
            | DriverKind::BechtolsheimDvi2ps => true,
            DriverKind::Textures
            | DriverKind::PsPrint
            | DriverKind::Arbor
            | DriverKind::Clark
            | DriverKind::Beebe
            | DriverKind::StandardUnset => false,
        }
    }
}

impl std::fmt::Display for DriverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-figure emission context beyond the file name and scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmitContext {
    /// Magnification, permille (1000 is unmagnified).
    pub mag: i32,
    /// Raw lower-left bounding-box tokens, exactly as probed.
    pub llx_token: String,
    pub lly_token: String,
    /// Natural dimensions before trimming or scaling.
    pub untrimmed_width: ScaledDim,
    pub untrimmed_height: ScaledDim,
}

impl Default for EmitContext {
    fn default() -> EmitContext {
        EmitContext {
            mag: 1000,
            llx_token: "0".to_string(),
            lly_token: "0".to_string(),
            untrimmed_width: ScaledDim::ZERO,
            untrimmed_height: ScaledDim::ZERO,
        }
    }
}

/// The escape lines for one figure.
///
/// `setup_lines` must be emitted once per document before any figure;
/// `figure_lines` are emitted at each figure's anchor point, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialEmission {
    pub setup_lines: Vec<String>,
    pub figure_lines: Vec<String>,
    pub ps_origin: bool,
}

/// Errors from emission. The scale string must be a rendered decimal; the
/// pipeline always hands one over, so these only fire on hand-built input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmitError {
    #[error("scale {0:?} is not a decimal numeral: {1}")]
    BadScale(String, DecimalParseError),
    #[error("scale arithmetic: {0}")]
    Arith(#[from] ArithError),
}

/// `S` divided by the given divisor in points, re-rendered. Divisor 1000
/// gives the unit factor `K`; 10 gives the percentage `P`.
fn scale_quotient(fig_scale_real: &str, divisor: i32) -> Result<String, EmitError> {
    let constant: DecimalConstant = fig_scale_real
        .parse()
        .map_err(|e| EmitError::BadScale(fig_scale_real.to_string(), e))?;
    let dim = constant.to_dim(Unit::Pt)?;
    Ok(dim.div(divisor).to_string())
}

/// The text of `S` before its first `.`; all of `S` if it has none.
fn integer_prefix(fig_scale_real: &str) -> &str {
    fig_scale_real
        .split_once('.')
        .map_or(fig_scale_real, |(head, _)| head)
}

/// Renders the escape lines for one figure.
///
/// `file_spec` is the resolved file name, `fig_scale_real` the rendered
/// scale `S`. The unset driver emits nothing and returns its warning lines;
/// every other driver emits at least one figure line and no warnings.
pub fn emit(
    driver: DriverKind,
    file_spec: &str,
    fig_scale_real: &str,
    ctx: &EmitContext,
) -> Result<(SpecialEmission, Vec<String>), EmitError> {
    let s = fig_scale_real;
    let file = file_spec;
    let mag = ctx.mag;
    let mut emission = SpecialEmission {
        ps_origin: driver.ps_origin(),
        ..SpecialEmission::default()
    };
    let mut warnings = Vec::new();
    match driver {
        DriverKind::Textures => {
            let i = integer_prefix(s);
            emission
                .figure_lines
                .push(format!("illustration {file} scaled {i}"));
        }
        DriverKind::UnixCoop => {
            let k = scale_quotient(s, 1000)?;
            emission
                .figure_lines
                .push(format!("psfile={file} hscale={k} vscale={k}"));
        }
        DriverKind::Rokicki => {
            let p = scale_quotient(s, 10)?;
            emission
                .figure_lines
                .push(format!("psfile=\"{file}\" hscale={p} vscale={p}"));
        }
        DriverKind::InlineRokicki => {
            let k = scale_quotient(s, 1000)?;
            emission.figure_lines.push(format!(
                "ps::[begin] 10 10 0 0 10 10 startTexFig {mag} 1000 div {k} mul {mag} 1000 div {k} mul scale"
            ));
            emission.figure_lines.push(format!("ps: plotfile {file}"));
            emission.figure_lines.push("ps::[end] endTexFig".to_string());
        }
        DriverKind::OzTex => {
            let k = scale_quotient(s, 1000)?;
            emission
                .figure_lines
                .push(format!("epsf=\"{file}\" scale={k}"));
        }
        DriverKind::Lis => {
            let k = scale_quotient(s, 1000)?;
            emission.figure_lines.push(format!(
                "pstext=\"10 10 0 0 10 10 startTexFig {mag} 1000 div {k} mul {mag} 1000 div {k} mul scale\""
            ));
            emission.figure_lines.push(format!("psfile={file}"));
            emission.figure_lines.push("pstext=endTexFig".to_string());
        }
        DriverKind::PsPrint => {
            let llx = &ctx.llx_token;
            let lly = &ctx.lly_token;
            // The trailing space is part of the dialect.
            emission.figure_lines.push(format!(
                "{file} {s} 1000 div {mag} 1000 div mul {s} 1000 div {mag} 1000 div mul scale {llx} neg {lly} neg translate "
            ));
        }
        DriverKind::Arbor => {
            let i = integer_prefix(s);
            emission
                .figure_lines
                .push(format!("ps: epsfile {file} {i}"));
        }
        DriverKind::Clark => {
            let s_dim: DecimalConstant = s
                .parse()
                .map_err(|e| EmitError::BadScale(s.to_string(), e))?;
            let s_pt = s_dim.to_dim(Unit::Pt)?;
            let unit = ScaledDim::from_sp(65_536_000);
            let w = ctx.untrimmed_width.rescale(s_pt, unit)?;
            let h = ctx.untrimmed_height.rescale(s_pt, unit)?;
            emission
                .figure_lines
                .push(format!("dvitops: import {file} {w}pt {h}pt"));
        }
        DriverKind::Beebe => {
            emission.figure_lines.push(format!(
                "language \"PS\", literal \"{s} 1000 div {s} 1000 div scale\", position = \"bottom left\", include \"{file}\""
            ));
        }
        DriverKind::Northlake => {
            let i = integer_prefix(s);
            emission
                .figure_lines
                .push(format!("insert {file},magnification={i}"));
        }
        DriverKind::BechtolsheimDvitps | DriverKind::BechtolsheimDvi2ps => {
            let tag = if driver == DriverKind::BechtolsheimDvitps {
                "dvitps: "
            } else {
                "DVI2PS: "
            };
            let k = scale_quotient(s, 1000)?;
            emission
                .setup_lines
                .push(format!("{tag}Include0 \"psfig.pro\""));
            // Both Literal strings carry a trailing space inside the quotes.
            emission.figure_lines.push(format!(
                "{tag}Literal \"10 10 0 0 10 10 startTexFig {mag} 1000 div dup 3.25 neg mul 2 index .25 neg mul translate {k} mul dup scale \""
            ));
            emission
                .figure_lines
                .push(format!("{tag}Include1 \"{file}\""));
            emission
                .figure_lines
                .push(format!("{tag}Literal \"endTexFig \""));
        }
        DriverKind::StandardUnset => {
            warnings.push(
                "!!! Sorry! There is still no standard for \\special EPSF integration !!!"
                    .to_string(),
            );
            warnings.push(
                "--- So you will have to identify your driver (--driver <kind>) to get your graphics to print."
                    .to_string(),
            );
        }
    }
    Ok((emission, warnings))
}
