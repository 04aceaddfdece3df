//! Line-oriented batch manifests.
//!
//! A manifest is a text file with one `key value` pair per line. Blank lines
//! and lines starting with `#` are skipped. Session keys may appear only
//! before the first figure:
//!
//! ```text
//! # session
//! driver rokicki
//! mag 1000
//! default-scale 500
//! directory figs/
//! axis-height 2.5pt
//! frames hide
//! ps-origin false
//!
//! figure plot.eps scaled 750
//! trim-all 2pt
//! align b
//!
//! figure map.eps
//! force-width 200pt
//! force-on
//! ```
//!
//! Entry keys follow their `figure` line: `trim-top`, `trim-left`,
//! `trim-bottom`, `trim-right`, `trim-all`, `force-width`, `force-height`,
//! `force-on`, `force-off`, `hslide`, `vslide`, and `align`. Dimension
//! values take a `pt` or `bp` suffix; `figure` and `default-scale` take bare
//! decimals in points-per-thousand.
//!
//! Forced dimensions are threaded across entries in order while parsing:
//! a plain `force-width` applies to its own figure only, `force-on` makes
//! the current force stick to every following figure, and `force-off` ends
//! it. Each parsed entry carries the force it will actually be placed with,
//! so placement order no longer matters afterwards.

use std::path::Path;

use crate::directive::{
    Alignment, FigureDirective, ForceState, ForcedAxis, SessionConfig, TrimEdge,
};
use crate::drivers::DriverKind;
use crate::scaled::{parse_dimension, DecimalConstant, ScaledDim, Unit};

/// A parsed manifest: the session configuration plus the figure entries in
/// order, each with its effective force already resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub config: SessionConfig,
    pub entries: Vec<FigureDirective>,
}

/// Errors from manifest parsing, each locating the offending line.
#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {key} must come before the first figure")]
    ConfigAfterFigure { line: usize, key: String },
    #[error("line {line}: {key} needs a preceding figure line")]
    EntryKeyBeforeFigure { line: usize, key: String },
    #[error("line {line}: {key}: missing value")]
    MissingValue { line: usize, key: String },
    #[error("line {line}: {key} takes no value, got {value:?}")]
    UnexpectedValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("line {line}: {key}: {message}")]
    BadValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

const SESSION_KEYS: [&str; 7] = [
    "driver",
    "mag",
    "default-scale",
    "directory",
    "axis-height",
    "frames",
    "ps-origin",
];

struct Parser {
    config: SessionConfig,
    entries: Vec<FigureDirective>,
    current: Option<FigureDirective>,
    force: ForceState,
}

impl Parser {
    fn bad(line: usize, key: &str, message: impl ToString) -> ManifestError {
        ManifestError::BadValue {
            line,
            key: key.to_string(),
            message: message.to_string(),
        }
    }

    fn value<'a>(
        line: usize,
        key: &str,
        value: Option<&'a str>,
    ) -> Result<&'a str, ManifestError> {
        value.ok_or_else(|| ManifestError::MissingValue {
            line,
            key: key.to_string(),
        })
    }

    fn dimension(line: usize, key: &str, value: Option<&str>) -> Result<ScaledDim, ManifestError> {
        parse_dimension(Self::value(line, key, value)?).map_err(|e| Self::bad(line, key, e))
    }

    /// Bare decimal in points-per-thousand, the `\FigScale=#2pt` convention.
    fn permille(line: usize, key: &str, value: &str) -> Result<ScaledDim, ManifestError> {
        let constant: DecimalConstant = value.parse().map_err(|e| Self::bad(line, key, e))?;
        constant
            .to_dim(Unit::Pt)
            .map_err(|e| Self::bad(line, key, e))
    }

    fn finish_entry(&mut self) {
        if let Some(mut entry) = self.current.take() {
            entry.force = self.force.current();
            self.force.after_placement();
            self.entries.push(entry);
        }
    }

    fn session_key(
        &mut self,
        line: usize,
        key: &str,
        value: Option<&str>,
    ) -> Result<(), ManifestError> {
        if self.current.is_some() || !self.entries.is_empty() {
            return Err(ManifestError::ConfigAfterFigure {
                line,
                key: key.to_string(),
            });
        }
        match key {
            "driver" => {
                let name = Self::value(line, key, value)?;
                self.config.driver = DriverKind::from_name(name)
                    .ok_or_else(|| Self::bad(line, key, format!("unknown driver {name:?}")))?;
            }
            "mag" => {
                let text = Self::value(line, key, value)?;
                let mag: i32 = text.parse().map_err(|e| Self::bad(line, key, e))?;
                if !(1..=32768).contains(&mag) {
                    return Err(Self::bad(line, key, "magnification must be 1 to 32768"));
                }
                self.config.mag = mag;
            }
            "default-scale" => {
                self.config.default_scale =
                    Self::permille(line, key, Self::value(line, key, value)?)?;
            }
            "directory" => {
                self.config.directory_prefix = Self::value(line, key, value)?.to_string();
            }
            "axis-height" => {
                self.config.axis_height = Self::dimension(line, key, value)?;
            }
            "frames" => match Self::value(line, key, value)? {
                "show" => self.config.show_frames = true,
                "hide" => self.config.show_frames = false,
                other => {
                    return Err(Self::bad(line, key, format!("expected show or hide, got {other:?}")))
                }
            },
            "ps-origin" => match Self::value(line, key, value)? {
                "true" => self.config.ps_origin_override = Some(true),
                "false" => self.config.ps_origin_override = Some(false),
                other => {
                    return Err(Self::bad(line, key, format!("expected true or false, got {other:?}")))
                }
            },
            _ => unreachable!("caller checked the key"),
        }
        Ok(())
    }

    fn entry_key(
        &mut self,
        line: usize,
        key: &str,
        value: Option<&str>,
    ) -> Result<(), ManifestError> {
        let Some(entry) = self.current.as_mut() else {
            return Err(ManifestError::EntryKeyBeforeFigure {
                line,
                key: key.to_string(),
            });
        };
        let bare = || -> Result<(), ManifestError> {
            match value {
                None => Ok(()),
                Some(v) => Err(ManifestError::UnexpectedValue {
                    line,
                    key: key.to_string(),
                    value: v.to_string(),
                }),
            }
        };
        match key {
            "trim-top" => entry
                .trim(TrimEdge::Top, Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "trim-left" => entry
                .trim(TrimEdge::Left, Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "trim-bottom" => entry
                .trim(TrimEdge::Bottom, Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "trim-right" => entry
                .trim(TrimEdge::Right, Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "trim-all" => entry
                .trim_all(Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "hslide" => entry
                .slide_h(Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "vslide" => entry
                .slide_v(Self::dimension(line, key, value)?)
                .map_err(|e| Self::bad(line, key, e))?,
            "align" => {
                let name = Self::value(line, key, value)?;
                entry.alignment = Alignment::from_name(name)
                    .ok_or_else(|| Self::bad(line, key, format!("unknown alignment {name:?}")))?;
            }
            "force-width" => {
                let amount = Self::dimension(line, key, value)?;
                self.force.force(ForcedAxis::Width, amount);
            }
            "force-height" => {
                let amount = Self::dimension(line, key, value)?;
                self.force.force(ForcedAxis::Height, amount);
            }
            "force-on" => {
                bare()?;
                self.force.force_on();
            }
            "force-off" => {
                bare()?;
                self.force.force_off();
            }
            _ => unreachable!("caller checked the key"),
        }
        Ok(())
    }
}

impl Manifest {
    /// Parses manifest text. Syntax errors abort the whole parse; nothing is
    /// placed from a bad manifest.
    pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
        let mut parser = Parser {
            config: SessionConfig::default(),
            entries: Vec::new(),
            current: None,
            force: ForceState::default(),
        };
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = match trimmed.split_once(char::is_whitespace) {
                Some((k, rest)) => (k, Some(rest.trim()).filter(|r| !r.is_empty())),
                None => (trimmed, None),
            };
            if key == "figure" {
                let arg = Parser::value(line, key, value)?;
                parser.finish_entry();
                let entry = FigureDirective::parse(arg, &parser.config)
                    .map_err(|e| Parser::bad(line, key, e))?;
                parser.current = Some(entry);
            } else if SESSION_KEYS.contains(&key) {
                parser.session_key(line, key, value)?;
            } else if matches!(
                key,
                "trim-top"
                    | "trim-left"
                    | "trim-bottom"
                    | "trim-right"
                    | "trim-all"
                    | "force-width"
                    | "force-height"
                    | "force-on"
                    | "force-off"
                    | "hslide"
                    | "vslide"
                    | "align"
            ) {
                parser.entry_key(line, key, value)?;
            } else {
                return Err(ManifestError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
        }
        parser.finish_entry();
        Ok(Manifest {
            config: parser.config,
            entries: parser.entries,
        })
    }

    /// Reads and parses a manifest file.
    pub fn from_file(path: &Path) -> Result<Manifest, ManifestError> {
        Manifest::parse(&std::fs::read_to_string(path)?)
    }

    /// Whether any entry carries a persistent force. Batches fall back to
    /// sequential placement in that case, preserving the historical
    /// threading even though parsed entries are already self-contained.
    pub fn has_persistent_force(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.force.is_some_and(|f| f.persistent))
    }
}
