//! Figure inclusion directives and session configuration.
//!
//! A directive is one request to place one EPS file: the file name (with an
//! optional ` scaled N` suffix in the same argument), accumulated trims and
//! slides, an optional forced dimension, and the box alignment. Session
//! configuration carries everything that outlives a single figure: the
//! default scale, the directory prefix, the driver, magnification, and the
//! math-axis height used for centered alignment.

use crate::drivers::DriverKind;
use crate::scaled::{ArithError, DecimalConstant, DecimalParseError, ScaledDim, Unit};

/// Vertical alignment of the reserved box on the baseline.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Alignment {
    /// Centered on the math axis.
    #[default]
    Center,
    /// Top edge on the baseline; the figure hangs below.
    Top,
    /// Bottom edge on the baseline; the figure stands above.
    Bottom,
}

impl Alignment {
    pub fn name(self) -> &'static str {
        match self {
            Alignment::Center => "center",
            Alignment::Top => "top",
            Alignment::Bottom => "bottom",
        }
    }

    /// Accepts full names and the single-letter forms `c`, `t`, `b`.
    pub fn from_name(name: &str) -> Option<Alignment> {
        match name {
            "c" | "center" => Some(Alignment::Center),
            "t" | "top" => Some(Alignment::Top),
            "b" | "bottom" => Some(Alignment::Bottom),
            _ => None,
        }
    }
}

/// Which dimension a forced scale pins.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ForcedAxis {
    Width,
    Height,
}

/// A forced dimension: the trimmed figure is rescaled so this axis comes out
/// at exactly `amount`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Force {
    pub axis: ForcedAxis,
    pub amount: ScaledDim,
    /// Persistent forces survive the figure that used them; one-shot forces
    /// are consumed by the first placement.
    pub persistent: bool,
}

/// The force registers threaded across figures in a session.
///
/// Forcing a dimension arms the registers; placement consumes the armed
/// state unless it was made persistent. The axis and amount survive
/// consumption but lie inert until re-armed, and the persistence toggle is
/// independent of arming: switching it on without a new forced dimension
/// does not resurrect a consumed force.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ForceState {
    active: bool,
    axis: ForcedAxis,
    amount: ScaledDim,
    persistent: bool,
}

impl Default for ForceState {
    fn default() -> ForceState {
        ForceState {
            active: false,
            axis: ForcedAxis::Width,
            amount: ScaledDim::ZERO,
            persistent: false,
        }
    }
}

impl ForceState {
    /// Arms a forced dimension.
    pub fn force(&mut self, axis: ForcedAxis, amount: ScaledDim) {
        self.active = true;
        self.axis = axis;
        self.amount = amount;
    }

    /// Makes the armed force survive placements.
    pub fn force_on(&mut self) {
        self.persistent = true;
    }

    /// Ends persistence and disarms outright.
    pub fn force_off(&mut self) {
        self.persistent = false;
        self.active = false;
    }

    /// The force a placement made right now would see.
    pub fn current(&self) -> Option<Force> {
        self.active.then_some(Force {
            axis: self.axis,
            amount: self.amount,
            persistent: self.persistent,
        })
    }

    /// Consumes a one-shot force; persistent ones stay armed.
    pub fn after_placement(&mut self) {
        if !self.persistent {
            self.active = false;
        }
    }
}

/// Accumulated edge trims, in unscaled figure dimensions.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Trims {
    pub top: ScaledDim,
    pub left: ScaledDim,
    pub bottom: ScaledDim,
    pub right: ScaledDim,
}

/// Accumulated post-scale slides of the figure ink within its box.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Slides {
    pub h: ScaledDim,
    pub v: ScaledDim,
}

/// An edge a trim applies to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TrimEdge {
    Top,
    Left,
    Bottom,
    Right,
}

/// Errors from directive parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DirectiveError {
    #[error("figure name is empty")]
    EmptyName,
    /// The historical sentinel name for this mistake was `FigNameWithSpace`.
    #[error("FigNameWithSpace: figure name {0:?} contains whitespace")]
    NameContainsSpace(String),
    #[error("bad scale after \"scaled\": {0}")]
    BadScale(DecimalParseError),
    #[error("scale out of range: {0}")]
    ScaleRange(ArithError),
}

/// Strips leading and trailing spaces from a figure name and rejects names
/// with interior whitespace.
pub fn trim_name(raw: &str) -> Result<String, DirectiveError> {
    let name = raw.trim_matches([' ', '\t']);
    if name.is_empty() {
        return Err(DirectiveError::EmptyName);
    }
    if name.contains(char::is_whitespace) {
        return Err(DirectiveError::NameContainsSpace(name.to_string()));
    }
    Ok(name.to_string())
}

/// Splits a directive argument into file name and scale.
///
/// If the argument contains ` scaled`, it is split at the *first* occurrence
/// of `scaled` anywhere (which may sit inside a longer word); the head is
/// the name, the tail must be a decimal scale in points-per-thousand. An
/// argument like `a scaled 2 scaled 3` therefore fails (the scale text
/// `2 scaled 3` is not a numeral) rather than picking either number.
/// Without the marker, the whole argument is the name and the default scale
/// applies.
pub fn parse_name_and_scale(
    arg: &str,
    default_scale: ScaledDim,
) -> Result<(String, ScaledDim), DirectiveError> {
    if arg.contains(" scaled") {
        let (head, tail) = arg.split_once("scaled").expect("contains scaled");
        let name = trim_name(head)?;
        let constant: DecimalConstant = tail
            .trim_matches([' ', '\t'])
            .parse()
            .map_err(DirectiveError::BadScale)?;
        let scale = constant
            .to_dim(Unit::Pt)
            .map_err(DirectiveError::ScaleRange)?;
        Ok((name, scale))
    } else {
        Ok((trim_name(arg)?, default_scale))
    }
}

/// Session-wide configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    /// Scale applied to directives without their own, permille as a
    /// dimension: 65536000sp is scale 1000, the identity.
    pub default_scale: ScaledDim,
    /// Prefix concatenated verbatim onto figure names; supply your own
    /// trailing separator.
    pub directory_prefix: String,
    pub driver: DriverKind,
    /// Magnification, permille.
    pub mag: i32,
    /// Height of the math axis above the baseline, for centered alignment.
    pub axis_height: ScaledDim,
    /// Overrides the driver's PostScript-origin flag when set.
    pub ps_origin_override: Option<bool>,
    /// Whether placements ask for proofing frames.
    pub show_frames: bool,
}

impl Default for SessionConfig {
    fn default() -> SessionConfig {
        SessionConfig {
            default_scale: ScaledDim::from_sp(65_536_000),
            directory_prefix: String::new(),
            driver: DriverKind::StandardUnset,
            mag: 1000,
            axis_height: ScaledDim::from_sp(163_840),
            ps_origin_override: None,
            show_frames: true,
        }
    }
}

impl SessionConfig {
    /// The effective PostScript-origin flag: the override if set, otherwise
    /// the driver's own.
    pub fn ps_origin(&self) -> bool {
        self.ps_origin_override.unwrap_or(self.driver.ps_origin())
    }

    /// Resolves a figure name to the file spec: prefix plus name, with no
    /// normalization of either part.
    pub fn resolve_spec(&self, name: &str) -> String {
        format!("{}{}", self.directory_prefix, name)
    }
}

/// One figure inclusion request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureDirective {
    pub file_name: String,
    /// The resolved name handed to the driver: directory prefix plus name.
    pub file_spec: String,
    /// Figure scale, permille as a dimension.
    pub scale: ScaledDim,
    pub trims: Trims,
    pub force: Option<Force>,
    pub slides: Slides,
    pub alignment: Alignment,
    pub show_frames: bool,
}

impl FigureDirective {
    /// Parses `name` or `name scaled N` into a fresh directive with the
    /// session's defaults.
    pub fn parse(arg: &str, config: &SessionConfig) -> Result<FigureDirective, DirectiveError> {
        let (file_name, scale) = parse_name_and_scale(arg, config.default_scale)?;
        let file_spec = config.resolve_spec(&file_name);
        Ok(FigureDirective {
            file_name,
            file_spec,
            scale,
            trims: Trims::default(),
            force: None,
            slides: Slides::default(),
            alignment: Alignment::default(),
            show_frames: config.show_frames,
        })
    }

    /// Adds to one edge's trim. Trims accumulate; they are not replaced.
    pub fn trim(&mut self, edge: TrimEdge, amount: ScaledDim) -> Result<(), ArithError> {
        let slot = match edge {
            TrimEdge::Top => &mut self.trims.top,
            TrimEdge::Left => &mut self.trims.left,
            TrimEdge::Bottom => &mut self.trims.bottom,
            TrimEdge::Right => &mut self.trims.right,
        };
        *slot = slot.try_add(amount)?;
        Ok(())
    }

    /// Adds the same trim to all four edges.
    pub fn trim_all(&mut self, amount: ScaledDim) -> Result<(), ArithError> {
        for edge in [TrimEdge::Top, TrimEdge::Left, TrimEdge::Bottom, TrimEdge::Right] {
            self.trim(edge, amount)?;
        }
        Ok(())
    }

    /// Adds to the horizontal slide (positive slides right).
    pub fn slide_h(&mut self, amount: ScaledDim) -> Result<(), ArithError> {
        self.slides.h = self.slides.h.try_add(amount)?;
        Ok(())
    }

    /// Adds to the vertical slide (positive slides down).
    pub fn slide_v(&mut self, amount: ScaledDim) -> Result<(), ArithError> {
        self.slides.v = self.slides.v.try_add(amount)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SessionConfig {
        SessionConfig::default()
    }

    #[test]
    fn unscaled_directive_takes_the_default() {
        let d = FigureDirective::parse("m.eps", &cfg()).unwrap();
        assert_eq!(d.file_name, "m.eps");
        assert_eq!(d.file_spec, "m.eps");
        assert_eq!(d.scale.sp(), 65_536_000);
        assert_eq!(d.alignment, Alignment::Center);
        assert!(d.show_frames);
    }

    #[test]
    fn scaled_suffix_overrides_the_default() {
        let d = FigureDirective::parse("plot.eps scaled 500", &cfg()).unwrap();
        assert_eq!(d.file_name, "plot.eps");
        assert_eq!(d.scale.sp(), 32_768_000);
        let d = FigureDirective::parse("plot.eps scaled 1250.5", &cfg()).unwrap();
        assert_eq!(d.scale.sp(), 1250 * 65536 + 32768);
    }

    #[test]
    fn split_happens_at_the_first_scaled() {
        let err = FigureDirective::parse("a scaled 2 scaled 3", &cfg()).unwrap_err();
        assert!(matches!(err, DirectiveError::BadScale(_)));
        // The first "scaled" may sit inside a word; the head is the name.
        let err = FigureDirective::parse("ascaled b scaled 10", &cfg()).unwrap_err();
        assert!(matches!(err, DirectiveError::BadScale(_)));
    }

    #[test]
    fn names_are_trimmed_but_interior_spaces_are_fatal() {
        assert_eq!(trim_name("  fig.eps ").unwrap(), "fig.eps");
        assert_eq!(trim_name("fig.eps").unwrap(), "fig.eps");
        let err = trim_name("my fig.eps").unwrap_err();
        assert!(err.to_string().contains("FigNameWithSpace"));
        assert_eq!(trim_name("   "), Err(DirectiveError::EmptyName));
        assert_eq!(trim_name(""), Err(DirectiveError::EmptyName));
    }

    #[test]
    fn scaled_without_leading_space_is_part_of_the_name() {
        // No " scaled" marker, so the whole argument is a (bad) name.
        let err = FigureDirective::parse("figscaled 500", &cfg()).unwrap_err();
        assert!(matches!(err, DirectiveError::NameContainsSpace(_)));
    }

    #[test]
    fn directory_prefix_concatenates_verbatim() {
        let config = SessionConfig {
            directory_prefix: "figs/".to_string(),
            ..SessionConfig::default()
        };
        let d = FigureDirective::parse("m.eps", &config).unwrap();
        assert_eq!(d.file_spec, "figs/m.eps");
        // No separator is invented.
        let config = SessionConfig {
            directory_prefix: "figs".to_string(),
            ..SessionConfig::default()
        };
        assert_eq!(
            FigureDirective::parse("m.eps", &config).unwrap().file_spec,
            "figsm.eps"
        );
    }

    #[test]
    fn trims_and_slides_accumulate() {
        let mut d = FigureDirective::parse("m.eps", &cfg()).unwrap();
        d.trim(TrimEdge::Top, ScaledDim::from_sp(65536)).unwrap();
        d.trim(TrimEdge::Top, ScaledDim::from_sp(65536)).unwrap();
        d.trim_all(ScaledDim::from_sp(100)).unwrap();
        assert_eq!(d.trims.top.sp(), 131_172);
        assert_eq!(d.trims.left.sp(), 100);
        assert_eq!(d.trims.bottom.sp(), 100);
        assert_eq!(d.trims.right.sp(), 100);
        d.slide_h(ScaledDim::from_sp(-500)).unwrap();
        d.slide_h(ScaledDim::from_sp(200)).unwrap();
        assert_eq!(d.slides.h.sp(), -300);
        d.slide_v(ScaledDim::from_sp(42)).unwrap();
        assert_eq!(d.slides.v.sp(), 42);
    }

    #[test]
    fn session_origin_override_wins() {
        let mut config = SessionConfig {
            driver: DriverKind::Rokicki,
            ..SessionConfig::default()
        };
        assert!(config.ps_origin());
        config.ps_origin_override = Some(false);
        assert!(!config.ps_origin());
        config.driver = DriverKind::Clark;
        config.ps_origin_override = Some(true);
        assert!(config.ps_origin());
    }

    #[test]
    fn default_config_matches_the_historical_defaults() {
        let config = SessionConfig::default();
        assert_eq!(config.default_scale.sp(), 65_536_000);
        assert_eq!(config.mag, 1000);
        assert_eq!(config.axis_height.sp(), 163_840);
        assert_eq!(config.driver, DriverKind::StandardUnset);
        assert_eq!(config.ps_origin_override, None);
        assert!(config.show_frames);
    }

    #[test]
    fn alignment_names() {
        assert_eq!(Alignment::from_name("c"), Some(Alignment::Center));
        assert_eq!(Alignment::from_name("top"), Some(Alignment::Top));
        assert_eq!(Alignment::from_name("b"), Some(Alignment::Bottom));
        assert_eq!(Alignment::from_name("middle"), None);
    }

    #[test]
    fn one_shot_force_is_consumed_by_placement() {
        let mut state = ForceState::default();
        assert_eq!(state.current(), None);
        state.force(ForcedAxis::Width, ScaledDim::from_sp(131_072));
        let force = state.current().unwrap();
        assert_eq!(force.axis, ForcedAxis::Width);
        assert_eq!(force.amount.sp(), 131_072);
        assert!(!force.persistent);
        state.after_placement();
        assert_eq!(state.current(), None);
    }

    #[test]
    fn persistent_force_survives_placements() {
        let mut state = ForceState::default();
        state.force(ForcedAxis::Height, ScaledDim::from_sp(65536));
        state.force_on();
        state.after_placement();
        let force = state.current().unwrap();
        assert_eq!(force.axis, ForcedAxis::Height);
        assert!(force.persistent);
        state.force_off();
        assert_eq!(state.current(), None);
        state.after_placement();
        assert_eq!(state.current(), None);
    }

    #[test]
    fn persistence_alone_does_not_resurrect_a_consumed_force() {
        let mut state = ForceState::default();
        state.force(ForcedAxis::Width, ScaledDim::from_sp(131_072));
        state.after_placement();
        state.force_on();
        assert_eq!(state.current(), None);
        // A fresh forced dimension re-arms, now persistently.
        state.force(ForcedAxis::Width, ScaledDim::from_sp(196_608));
        let force = state.current().unwrap();
        assert!(force.persistent);
        assert_eq!(force.amount.sp(), 196_608);
    }
}
