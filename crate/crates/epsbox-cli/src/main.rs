//! Command-line front end for EPS figure placement.
//!
//! Four subcommands: `bbox` probes one file, `place` runs the placement
//! pipeline for one figure, `batch` runs a manifest, and `drivers` lists
//! the supported driver dialects. Reports go to stdout; warnings go to
//! stderr in human mode and into the records themselves in records mode.
//!
//! Failures the original macros survived (missing files, unusable bounding
//! boxes) stay survivable here: the placeholder box is placed, warnings are
//! printed, and the exit status stays zero unless `--strict` asks for
//! placeholder statuses to fail the run.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use epsbox::directive::{Force, ForcedAxis, TrimEdge};
use epsbox::dsc::{natural_dims, probe_file};
use epsbox::scaled::{parse_dimension, DecimalConstant, Unit};
use epsbox::{
    batch, Alignment, DriverKind, FigureDirective, Manifest, ProbeStatus, Report, ScaledDim,
    SessionConfig,
};

#[derive(Parser)]
#[command(
    name = "epsbox",
    version,
    about = "Probe EPS bounding boxes, compute figure placement boxes, and emit driver escape strings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probe one EPS file for its bounding box
    Bbox(BboxArgs),
    /// Place one figure and report box metrics and escape strings
    Place(PlaceArgs),
    /// Place every figure of a manifest file
    Batch(BatchArgs),
    /// List the supported driver kinds
    Drivers,
}

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
enum OutputMode {
    /// Labelled lines for people
    Human,
    /// Stable `key: value` records for machines
    Records,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "human")]
    output: OutputMode,
    /// Exit nonzero when any figure fell back to the placeholder box
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BboxArgs {
    /// EPS file to probe
    path: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PlaceArgs {
    /// Figure name, optionally with a `name scaled N` suffix
    figure: String,
    /// Scale in points-per-thousand (1000 is natural size)
    #[arg(long, value_parser = parse_permille)]
    scale: Option<ScaledDim>,
    /// Rescale so the trimmed width comes out exactly here (e.g. 100pt)
    #[arg(long, value_parser = parse_dim, conflicts_with = "force_height")]
    force_width: Option<ScaledDim>,
    /// Rescale so the trimmed height comes out exactly here
    #[arg(long, value_parser = parse_dim)]
    force_height: Option<ScaledDim>,
    /// Trim off the top edge (dimension with pt or bp suffix)
    #[arg(long, value_parser = parse_dim)]
    trim_top: Option<ScaledDim>,
    /// Trim off the left edge
    #[arg(long, value_parser = parse_dim)]
    trim_left: Option<ScaledDim>,
    /// Trim off the bottom edge
    #[arg(long, value_parser = parse_dim)]
    trim_bottom: Option<ScaledDim>,
    /// Trim off the right edge
    #[arg(long, value_parser = parse_dim)]
    trim_right: Option<ScaledDim>,
    /// Trim all four edges by the same amount
    #[arg(long, value_parser = parse_dim)]
    trim_all: Option<ScaledDim>,
    /// Slide the ink right (negative: left) after scaling
    #[arg(long, value_parser = parse_dim)]
    hslide: Option<ScaledDim>,
    /// Slide the ink down (negative: up) after scaling
    #[arg(long, value_parser = parse_dim)]
    vslide: Option<ScaledDim>,
    /// Box alignment on the baseline
    #[arg(long, value_parser = parse_align, default_value = "c")]
    align: Alignment,
    /// Driver dialect to emit for (see `epsbox drivers`)
    #[arg(long, value_parser = parse_driver)]
    driver: Option<DriverKind>,
    /// Magnification in permille
    #[arg(long, value_parser = clap::value_parser!(i32).range(1..=32768))]
    mag: Option<i32>,
    /// Prefix prepended verbatim to the figure name
    #[arg(long)]
    directory: Option<String>,
    /// Draw proofing frames around the reserved box
    #[arg(long, value_parser = parse_frames, default_value = "show")]
    frames: bool,
    /// Override the driver's PostScript-origin flag
    #[arg(long, value_parser = clap::value_parser!(bool))]
    ps_origin: Option<bool>,
    /// Math-axis height for centered alignment
    #[arg(long, value_parser = parse_dim)]
    axis_height: Option<ScaledDim>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BatchArgs {
    /// Manifest file to run
    manifest: PathBuf,
    /// Directory figure paths are resolved against (default: the
    /// manifest's own directory)
    #[arg(long)]
    base_dir: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_dim(text: &str) -> Result<ScaledDim, String> {
    parse_dimension(text).map_err(|e| e.to_string())
}

fn parse_permille(text: &str) -> Result<ScaledDim, String> {
    let constant: DecimalConstant = text.parse().map_err(|e| format!("{e}"))?;
    constant.to_dim(Unit::Pt).map_err(|e| e.to_string())
}

fn parse_align(text: &str) -> Result<Alignment, String> {
    Alignment::from_name(text).ok_or_else(|| format!("unknown alignment {text:?} (c, t, or b)"))
}

fn parse_driver(text: &str) -> Result<DriverKind, String> {
    DriverKind::from_name(text)
        .ok_or_else(|| format!("unknown driver {text:?} (see `epsbox drivers`)"))
}

fn parse_frames(text: &str) -> Result<bool, String> {
    match text {
        "show" => Ok(true),
        "hide" => Ok(false),
        other => Err(format!("expected show or hide, got {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Bbox(args) => cmd_bbox(args),
        Command::Place(args) => cmd_place(args),
        Command::Batch(args) => cmd_batch(args),
        Command::Drivers => {
            cmd_drivers();
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn strict_verdict(strict: bool, all_found: bool) -> ExitCode {
    if strict && !all_found {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_bbox(args: BboxArgs) -> anyhow::Result<ExitCode> {
    let spec = args.path.display().to_string();
    let (probe, warnings) = probe_file(&args.path, &spec, &spec);
    let nd = natural_dims(&probe, false)
        .with_context(|| format!("unusable bounding box in {spec}"))?;
    let t = probe.tokens();
    match args.out.output {
        OutputMode::Human => {
            println!("file: {spec}");
            println!("status: {}", probe.status.name());
            println!("bounding box: {} {} {} {}", t[0], t[1], t[2], t[3]);
            println!(
                "natural size: {}pt x {}pt ({} sp x {} sp)",
                nd.width,
                nd.height,
                nd.width.sp(),
                nd.height.sp()
            );
            for warning in &warnings {
                eprintln!("{warning}");
            }
        }
        OutputMode::Records => {
            let mut out = String::new();
            let mut kv = |key: &str, value: String| {
                out.push_str(key);
                out.push_str(": ");
                out.push_str(&value);
                out.push('\n');
            };
            kv("file", spec.clone());
            kv("status", probe.status.name().to_string());
            kv("bbox-llx", t[0].to_string());
            kv("bbox-lly", t[1].to_string());
            kv("bbox-urx", t[2].to_string());
            kv("bbox-ury", t[3].to_string());
            kv("width-sp", nd.width.sp().to_string());
            kv("width-pt", nd.width.to_string());
            kv("height-sp", nd.height.sp().to_string());
            kv("height-pt", nd.height.to_string());
            for warning in &warnings {
                kv("warning", warning.clone());
            }
            print!("{out}");
        }
    }
    Ok(strict_verdict(
        args.out.strict,
        probe.status == ProbeStatus::Found,
    ))
}

fn cmd_place(args: PlaceArgs) -> anyhow::Result<ExitCode> {
    let mut config = SessionConfig::default();
    if let Some(scale) = args.scale {
        config.default_scale = scale;
    }
    if let Some(driver) = args.driver {
        config.driver = driver;
    }
    if let Some(mag) = args.mag {
        config.mag = mag;
    }
    if let Some(directory) = args.directory {
        config.directory_prefix = directory;
    }
    if let Some(axis_height) = args.axis_height {
        config.axis_height = axis_height;
    }
    config.ps_origin_override = args.ps_origin;
    config.show_frames = args.frames;

    let mut directive = FigureDirective::parse(&args.figure, &config)
        .with_context(|| format!("bad figure argument {:?}", args.figure))?;
    let trims = [
        (TrimEdge::Top, args.trim_top),
        (TrimEdge::Left, args.trim_left),
        (TrimEdge::Bottom, args.trim_bottom),
        (TrimEdge::Right, args.trim_right),
    ];
    if let Some(amount) = args.trim_all {
        directive.trim_all(amount).context("trim-all")?;
    }
    for (edge, amount) in trims {
        if let Some(amount) = amount {
            directive.trim(edge, amount).context("trim")?;
        }
    }
    if let Some(amount) = args.hslide {
        directive.slide_h(amount).context("hslide")?;
    }
    if let Some(amount) = args.vslide {
        directive.slide_v(amount).context("vslide")?;
    }
    directive.alignment = args.align;
    directive.force = match (args.force_width, args.force_height) {
        (Some(amount), _) => Some(Force {
            axis: ForcedAxis::Width,
            amount,
            persistent: false,
        }),
        (None, Some(amount)) => Some(Force {
            axis: ForcedAxis::Height,
            amount,
            persistent: false,
        }),
        (None, None) => None,
    };

    let probe = batch::probe_entry(&directive, Path::new(""));
    let report = Report::build(&directive, &config, &probe)
        .with_context(|| format!("placing {}", directive.file_spec))?;
    print_reports(std::slice::from_ref(&report), args.out.output);
    Ok(strict_verdict(
        args.out.strict,
        report.status == ProbeStatus::Found,
    ))
}

fn cmd_batch(args: BatchArgs) -> anyhow::Result<ExitCode> {
    let manifest = Manifest::from_file(&args.manifest)
        .with_context(|| format!("reading manifest {}", args.manifest.display()))?;
    let base_dir = match args.base_dir {
        Some(dir) => dir,
        None => args
            .manifest
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."))
            .to_path_buf(),
    };
    let reports = batch::run(&manifest, &base_dir)?;
    print_reports(&reports, args.out.output);
    Ok(strict_verdict(
        args.out.strict,
        reports.iter().all(|r| r.status == ProbeStatus::Found),
    ))
}

fn print_reports(reports: &[Report], mode: OutputMode) {
    for (index, report) in reports.iter().enumerate() {
        if index > 0 {
            println!();
        }
        match mode {
            OutputMode::Human => {
                print!("{}", report.render_human());
                for warning in report.warnings() {
                    eprintln!("{warning}");
                }
            }
            OutputMode::Records => print!("{}", report.render_records()),
        }
    }
}

fn cmd_drivers() {
    for kind in DriverKind::ALL {
        println!(
            "{:<20} ps-origin {}",
            kind.name(),
            if kind.ps_origin() { "yes" } else { "no" }
        );
    }
    println!();
    println!("aliases: dvipsone -> unix-coop, dvialw -> beebe");
}
