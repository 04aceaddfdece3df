//! The placement pipeline: trims, scale resolution, register scaling, ink
//! anchor, and baseline-relative box metrics.
//!
//! The stages run in a fixed order on one figure at a time:
//!
//! 1. [`apply_trims`] shrinks the natural dimensions by the accumulated edge
//!    trims; the left and bottom trims survive because the ink anchor needs
//!    them, while top and right are consumed outright.
//! 2. [`resolve_scale`] picks the figure scale: the directive's own, or one
//!    computed by [`ScaledDim::rescale`] so a forced width or height comes
//!    out exactly.
//! 3. [`scale_dims`] multiplies every surviving register by the scale
//!    through [`ScaledDim::scale`]; a forced axis receives its amount
//!    verbatim instead of a rounded product.
//! 4. [`ink_anchor`] combines the scaled origin shift, the scaled left and
//!    bottom trims, and the (unscaled) slides into the offset of the
//!    figure's PostScript origin from the box's lower-left corner.
//! 5. [`compose_box`] splits the scaled height into height above and depth
//!    below the baseline according to the alignment.
//!
//! [`place`] runs the whole pipeline and is a pure function of its inputs;
//! batch callers may run placements concurrently as long as persistent
//! forced dimensions are threaded in order.

use crate::directive::{Alignment, FigureDirective, Force, ForcedAxis, SessionConfig, Slides, Trims};
use crate::dsc::{natural_dims, status_warnings, BBoxProbe, NaturalDims, NaturalDimsError};
use crate::scaled::{ArithError, ScaledDim};

/// Default rule thickness for proofing frames: 0.4 pt.
pub const RULE_THICKNESS: ScaledDim = ScaledDim::from_sp(26214);

/// Computed box metrics for one placed figure.
///
/// The ink anchor is the offset of the figure's PostScript origin from the
/// box's lower-left corner, +x right and +y up. `rule_thickness` is carried
/// for consumers that draw the proofing frames; frames never alter the
/// metrics themselves (the historical frames overlap the rule into the box
/// rather than widening it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub box_width: ScaledDim,
    pub height_above_baseline: ScaledDim,
    pub depth_below_baseline: ScaledDim,
    pub ink_anchor_x: ScaledDim,
    pub ink_anchor_y: ScaledDim,
    /// The resolved scale rendered as decimal text, e.g. `1000.0`. This
    /// exact string feeds the driver escape emitters.
    pub fig_scale_real: String,
    pub show_frames: bool,
    pub rule_thickness: ScaledDim,
    pub warnings: Vec<String>,
}

/// Errors from the placement pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("bounding box: {0}")]
    BBox(#[from] NaturalDimsError),
    #[error("{stage}: {source}")]
    Arith {
        stage: &'static str,
        source: ArithError,
    },
}

fn at(stage: &'static str) -> impl Fn(ArithError) -> LayoutError {
    move |source| LayoutError::Arith { stage, source }
}

/// Natural dimensions after trimming.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TrimmedDims {
    pub width: ScaledDim,
    pub height: ScaledDim,
    /// Left trim, kept for the ink anchor.
    pub left: ScaledDim,
    /// Bottom trim, kept for the ink anchor.
    pub bottom: ScaledDim,
}

/// Subtracts the edge trims from the natural dimensions.
///
/// Over-trimming to zero or below is not an error: the result is kept (a
/// degenerate box is still a box) and a warning describes it. Arithmetic
/// errors happen only when a subtraction leaves the representable dimension
/// range entirely.
pub fn apply_trims(nd: &NaturalDims, trims: Trims) -> Result<(TrimmedDims, Vec<String>), ArithError> {
    let width = nd.width.try_sub(trims.left)?.try_sub(trims.right)?;
    let height = nd.height.try_sub(trims.top)?.try_sub(trims.bottom)?;
    let mut warnings = Vec::new();
    if width.sp() <= 0 {
        warnings.push(format!("over-trimmed width: {width}pt"));
    }
    if height.sp() <= 0 {
        warnings.push(format!("over-trimmed height: {height}pt"));
    }
    Ok((
        TrimmedDims {
            width,
            height,
            left: trims.left,
            bottom: trims.bottom,
        },
        warnings,
    ))
}

/// The resolved figure scale plus any forced dimension that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleResolution {
    /// Scale in permille as a dimension: 65536000 sp is scale 1000.
    pub fig_scale: ScaledDim,
    pub forced_axis: Option<ForcedAxis>,
    pub forced_amount: Option<ScaledDim>,
}

/// Resolves the figure scale and renders it as decimal text.
///
/// Unforced directives pass their scale straight through. A forced width or
/// height instead computes `rescale(1000pt, amount, trimmed axis)`, so the
/// scale is whatever ratio makes the trimmed natural dimension come out at
/// the forced amount, within the staged fixed-point tolerance.
pub fn resolve_scale(
    scale: ScaledDim,
    force: Option<Force>,
    trimmed: &TrimmedDims,
) -> Result<(ScaleResolution, String), ArithError> {
    let resolution = match force {
        None => ScaleResolution {
            fig_scale: scale,
            forced_axis: None,
            forced_amount: None,
        },
        Some(force) => {
            let axis_dim = match force.axis {
                ForcedAxis::Width => trimmed.width,
                ForcedAxis::Height => trimmed.height,
            };
            let fig_scale =
                ScaledDim::from_sp(65_536_000).rescale(force.amount, axis_dim)?;
            ScaleResolution {
                fig_scale,
                forced_axis: Some(force.axis),
                forced_amount: Some(force.amount),
            }
        }
    };
    let fig_scale_real = resolution.fig_scale.to_string();
    Ok((resolution, fig_scale_real))
}

/// All per-figure registers after scaling.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ScaledRegisters {
    pub width: ScaledDim,
    pub height: ScaledDim,
    pub left_trim: ScaledDim,
    pub bottom_trim: ScaledDim,
    pub shift_x: ScaledDim,
    pub shift_y: ScaledDim,
}

/// Scales the trimmed dimensions, surviving trims, and origin shift.
///
/// A forced axis receives the forced amount verbatim; everything else goes
/// through the truncating [`ScaledDim::scale`] product.
pub fn scale_dims(
    res: &ScaleResolution,
    trimmed: &TrimmedDims,
    origin_shift: (ScaledDim, ScaledDim),
) -> Result<ScaledRegisters, ArithError> {
    let the_scale = res.fig_scale;
    let (width, height) = match (res.forced_axis, res.forced_amount) {
        (Some(ForcedAxis::Width), Some(amount)) => (amount, trimmed.height.scale(the_scale)?),
        (Some(ForcedAxis::Height), Some(amount)) => (trimmed.width.scale(the_scale)?, amount),
        _ => (
            trimmed.width.scale(the_scale)?,
            trimmed.height.scale(the_scale)?,
        ),
    };
    Ok(ScaledRegisters {
        width,
        height,
        left_trim: trimmed.left.scale(the_scale)?,
        bottom_trim: trimmed.bottom.scale(the_scale)?,
        shift_x: origin_shift.0.scale(the_scale)?,
        shift_y: origin_shift.1.scale(the_scale)?,
    })
}

/// Combines scaled shifts, scaled trims, and raw slides into the ink anchor.
///
/// Slides are deliberately not scaled: they are applied after scaling, so a
/// one-point slide always moves the ink one point. Positive `h` slides
/// right; positive `v` slides down (hence the subtraction).
pub fn ink_anchor(regs: &ScaledRegisters, slides: Slides) -> Result<(ScaledDim, ScaledDim), ArithError> {
    let ax = regs.shift_x.try_sub(regs.left_trim)?.try_add(slides.h)?;
    let ay = regs.shift_y.try_sub(regs.bottom_trim)?.try_sub(slides.v)?;
    Ok((ax, ay))
}

/// Baseline-relative metrics of the reserved box.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoxMetrics {
    pub box_width: ScaledDim,
    pub height_above_baseline: ScaledDim,
    pub depth_below_baseline: ScaledDim,
}

/// Splits the scaled height about the baseline according to the alignment.
///
/// Centered boxes sit on the math axis: height = h/2 + axis_height with
/// truncating division, and the remainder goes to the depth, so height plus
/// depth always equals h exactly. Top-aligned boxes hang entirely below the
/// baseline; bottom-aligned boxes stand entirely above it.
pub fn compose_box(
    width: ScaledDim,
    height: ScaledDim,
    alignment: Alignment,
    axis_height: ScaledDim,
) -> Result<BoxMetrics, ArithError> {
    let (above, below) = match alignment {
        Alignment::Center => {
            let above = height.div(2).try_add(axis_height)?;
            (above, height.try_sub(above)?)
        }
        Alignment::Top => (ScaledDim::ZERO, height),
        Alignment::Bottom => (height, ScaledDim::ZERO),
    };
    Ok(BoxMetrics {
        box_width: width,
        height_above_baseline: above,
        depth_below_baseline: below,
    })
}

/// Runs the full placement pipeline for one directive against one probe.
///
/// Pure: no state survives the call, so placing the same inputs twice gives
/// identical results, and batches may place figures concurrently. The one
/// cross-figure effect in the model, consumption of a one-shot forced
/// dimension, is the caller's job: after a successful placement a
/// non-persistent force must not be applied to the next figure.
///
/// The returned warnings fold together the probe's placeholder diagnostics
/// (rebuilt from its status) and the pipeline's own.
pub fn place(
    directive: &FigureDirective,
    config: &SessionConfig,
    probe: &BBoxProbe,
) -> Result<Placement, LayoutError> {
    let mut warnings = status_warnings(probe.status, &directive.file_spec, &directive.file_name);
    let nd = natural_dims(probe, config.ps_origin())?;
    let (trimmed, trim_warnings) = apply_trims(&nd, directive.trims).map_err(at("trim"))?;
    warnings.extend(trim_warnings);
    let (resolution, fig_scale_real) =
        resolve_scale(directive.scale, directive.force, &trimmed).map_err(at("forced scale"))?;
    let regs = scale_dims(
        &resolution,
        &trimmed,
        (nd.origin_shift_x, nd.origin_shift_y),
    )
    .map_err(at("scale"))?;
    let (ink_anchor_x, ink_anchor_y) = ink_anchor(&regs, directive.slides).map_err(at("ink anchor"))?;
    let metrics = compose_box(regs.width, regs.height, directive.alignment, config.axis_height)
        .map_err(at("box metrics"))?;
    Ok(Placement {
        box_width: metrics.box_width,
        height_above_baseline: metrics.height_above_baseline,
        depth_below_baseline: metrics.depth_below_baseline,
        ink_anchor_x,
        ink_anchor_y,
        fig_scale_real,
        show_frames: directive.show_frames,
        rule_thickness: RULE_THICKNESS,
        warnings,
    })
}
