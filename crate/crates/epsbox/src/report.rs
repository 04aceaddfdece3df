//! Per-figure reports: the probe, the placement, and the driver emission
//! bundled together, with human-readable and machine-readable renderings.

use crate::directive::{FigureDirective, SessionConfig};
use crate::drivers::{emit, EmitContext, EmitError, SpecialEmission};
use crate::dsc::{natural_dims, BBoxProbe, ProbeStatus};
use crate::layout::{place, LayoutError, Placement};
use crate::scaled::ScaledDim;

/// Everything known about one placed figure.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub file_name: String,
    pub file_spec: String,
    pub status: ProbeStatus,
    /// The four bounding-box tokens exactly as probed.
    pub bbox: [String; 4],
    pub placement: Placement,
    pub emission: SpecialEmission,
    /// Driver-level warnings (the unset-driver admonition); probe and
    /// layout warnings live in `placement.warnings`.
    pub driver_warnings: Vec<String>,
}

/// Errors from report building.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Emit(#[from] EmitError),
}

impl Report {
    /// Places the directive against the probe and emits for the session's
    /// driver.
    pub fn build(
        directive: &FigureDirective,
        config: &SessionConfig,
        probe: &BBoxProbe,
    ) -> Result<Report, ReportError> {
        let placement = place(directive, config, probe)?;
        let nd = natural_dims(probe, config.ps_origin()).map_err(LayoutError::BBox)?;
        let ctx = EmitContext {
            mag: config.mag,
            llx_token: probe.llx.clone(),
            lly_token: probe.lly.clone(),
            untrimmed_width: nd.untrimmed_width,
            untrimmed_height: nd.untrimmed_height,
        };
        let (emission, driver_warnings) = emit(
            config.driver,
            &directive.file_spec,
            &placement.fig_scale_real,
            &ctx,
        )?;
        Ok(Report {
            file_name: directive.file_name.clone(),
            file_spec: directive.file_spec.clone(),
            status: probe.status,
            bbox: probe.tokens().map(str::to_string),
            placement,
            emission,
            driver_warnings,
        })
    }

    /// All warnings in emission order: probe, then layout, then driver.
    pub fn warnings(&self) -> impl Iterator<Item = &str> {
        self.placement
            .warnings
            .iter()
            .chain(self.driver_warnings.iter())
            .map(String::as_str)
    }

    /// Multi-line human-readable rendering, warnings excluded (callers
    /// stream those separately).
    pub fn render_human(&self) -> String {
        let p = &self.placement;
        let mut out = String::new();
        let mut line = |text: String| {
            out.push_str(&text);
            out.push('\n');
        };
        line(format!(
            " *** Box composed for the EPSF file {}",
            self.file_name
        ));
        line(format!("file spec: {}", self.file_spec));
        line(format!("status: {}", self.status.name()));
        line(format!(
            "bounding box: {} {} {} {}",
            self.bbox[0], self.bbox[1], self.bbox[2], self.bbox[3]
        ));
        line(format!("figure scale: {}", p.fig_scale_real));
        line(format!("box width: {}", pt_and_sp(p.box_width)));
        line(format!(
            "height above baseline: {}",
            pt_and_sp(p.height_above_baseline)
        ));
        line(format!(
            "depth below baseline: {}",
            pt_and_sp(p.depth_below_baseline)
        ));
        line(format!(
            "ink anchor: ({}pt, {}pt)",
            p.ink_anchor_x, p.ink_anchor_y
        ));
        if p.show_frames {
            line(format!("frames: shown, rule {}pt", p.rule_thickness));
        } else {
            line("frames: hidden".to_string());
        }
        for setup in &self.emission.setup_lines {
            line(format!("setup special: {setup}"));
        }
        for special in &self.emission.figure_lines {
            line(format!("special: {special}"));
        }
        out
    }

    /// Machine-readable record: one `key: value` per line, fixed key order,
    /// byte-stable across runs. Repeatable keys are `setup`, `special`, and
    /// `warning`.
    pub fn render_records(&self) -> String {
        let p = &self.placement;
        let mut out = String::new();
        let mut kv = |key: &str, value: String| {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&value);
            out.push('\n');
        };
        kv("file", self.file_spec.clone());
        kv("name", self.file_name.clone());
        kv("status", self.status.name().to_string());
        kv("bbox-llx", self.bbox[0].clone());
        kv("bbox-lly", self.bbox[1].clone());
        kv("bbox-urx", self.bbox[2].clone());
        kv("bbox-ury", self.bbox[3].clone());
        kv("scale", p.fig_scale_real.clone());
        let mut dim = |key: &str, value: ScaledDim| {
            kv(&format!("{key}-sp"), value.sp().to_string());
            kv(&format!("{key}-pt"), value.to_string());
        };
        dim("width", p.box_width);
        dim("height", p.height_above_baseline);
        dim("depth", p.depth_below_baseline);
        dim("anchor-x", p.ink_anchor_x);
        dim("anchor-y", p.ink_anchor_y);
        kv(
            "frames",
            if p.show_frames { "show" } else { "hide" }.to_string(),
        );
        for setup in &self.emission.setup_lines {
            kv("setup", setup.clone());
        }
        for special in &self.emission.figure_lines {
            kv("special", special.clone());
        }
        for warning in self.warnings() {
            kv("warning", warning.to_string());
        }
        out
    }
}

fn pt_and_sp(value: ScaledDim) -> String {
    format!("{value}pt ({} sp)", value.sp())
}
