//! Command line front end: single-roi analysis, sequence runs, Beta fits,
//! synthetic data generation and SVG plotting.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edge_excess::io::{pgm, report, rois, svg};
use edge_excess::pipeline::GLOBAL_GROUP;
use edge_excess::{
    analyze_roi, classify_texture, fit_beta_mom, process_sequence, shift_to_unit, Averaging,
    BetaParams, GroupFitStatus, Grouping, Roi, RunConfig, RunReport, SynthKind, SynthSpec,
};

use crate::input::{load_frames, load_image, read_pe_csv, CliError};

#[derive(Parser)]
#[command(
    name = "edge-excess",
    version,
    about = "Measures random-texture density inside image regions via edge-crossing statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single image region and print its excess index.
    Analyze(AnalyzeArgs),
    /// Process a frame sequence against a roi track file and write a report.
    Run(RunArgs),
    /// Fit Beta parameters to a CSV of excess indices.
    Fit(FitArgs),
    /// Generate a synthetic image or mask as PGM.
    Synth(SynthArgs),
    /// Render SVG plots from a written report.
    Plot(PlotArgs),
}

/// Run configuration, shared by `analyze` and `run`.
#[derive(Args)]
struct ConfigArgs {
    /// Gradient threshold on the [0, 255] luminance scale.
    #[arg(long, default_value_t = RunConfig::default().t_grad)]
    t_grad: f32,
    /// Points sampled per roi.
    #[arg(long, default_value_t = RunConfig::default().n_points)]
    n_points: usize,
    /// Rejection threshold on the per-track running mean.
    #[arg(long, default_value_t = RunConfig::default().t_pe)]
    t_pe: f64,
    /// High/low texture cutoff on the fitted beta shape.
    #[arg(long, default_value_t = RunConfig::default().beta_threshold)]
    beta_threshold: f64,
    /// Histogram bins over [1, 2].
    #[arg(long, default_value_t = RunConfig::default().bins)]
    bins: usize,
    /// Run seed; per-roi sampling seeds derive from it.
    #[arg(long, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Beta-fit grouping.
    #[arg(long, value_enum, default_value_t = GroupingArg::PerTrack)]
    grouping: GroupingArg,
    /// Running-mean flavor.
    #[arg(long, value_enum, default_value_t = AveragingArg::Cumulative)]
    averaging: AveragingArg,
    /// Decay factor when --averaging ema is selected.
    #[arg(long, default_value_t = 0.2)]
    ema_lambda: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupingArg {
    PerTrack,
    Global,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AveragingArg {
    Cumulative,
    Ema,
}

impl ConfigArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            t_grad: self.t_grad,
            n_points: self.n_points,
            t_pe: self.t_pe,
            beta_threshold: self.beta_threshold,
            bins: self.bins,
            seed: self.seed,
            grouping: match self.grouping {
                GroupingArg::PerTrack => Grouping::PerTrack,
                GroupingArg::Global => Grouping::Global,
            },
            averaging: match self.averaging {
                AveragingArg::Cumulative => Averaging::Cumulative,
                AveragingArg::Ema => Averaging::Ema {
                    lambda: self.ema_lambda,
                },
            },
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input image (PGM or PNG).
    #[arg(long)]
    image: PathBuf,
    /// Region as X,Y,W,H; defaults to the full frame.
    #[arg(long)]
    roi: Option<String>,
    /// Frame index used for seed derivation.
    #[arg(long, default_value_t = 0)]
    frame: u64,
    /// Track id used for seed derivation.
    #[arg(long, default_value_t = 0)]
    track_id: u64,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Frame files in order, or a single directory of .pgm/.png frames
    /// (sorted by file name).
    #[arg(long, num_args = 1.., required = true)]
    frames: Vec<PathBuf>,
    /// Roi track file (.jsonl or .csv).
    #[arg(long)]
    rois: PathBuf,
    /// Output directory for report.json and the CSV tables.
    #[arg(long)]
    out: PathBuf,
    /// Also render histogram.svg and scatter.svg into the output directory.
    #[arg(long)]
    svg: bool,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct FitArgs {
    /// CSV of excess indices: either a bare column of values or any table
    /// with a `pe` column (rows.csv works).
    #[arg(long)]
    input: PathBuf,
    /// High/low texture cutoff on the fitted beta shape.
    #[arg(long, default_value_t = RunConfig::default().beta_threshold)]
    beta_threshold: f64,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    kind: SynthKindArg,
    #[arg(long, default_value_t = 256)]
    width: u32,
    #[arg(long, default_value_t = 256)]
    height: u32,
    /// Bernoulli density (bernoulli-mask only).
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Stripe period in pixels (stripes only).
    #[arg(long, default_value_t = 4)]
    period: u32,
    /// Dark level (step only).
    #[arg(long, default_value_t = 0)]
    low: u8,
    /// Bright level (step only).
    #[arg(long, default_value_t = 200)]
    high: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the edge mask (black/white) instead of the image. Required for
    /// bernoulli-mask, which has no image form.
    #[arg(long)]
    mask: bool,
    /// Output PGM path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SynthKindArg {
    Blank,
    Step,
    Stripes,
    BernoulliMask,
}

#[derive(Args)]
struct PlotArgs {
    /// A report.json written by `run`.
    #[arg(long)]
    report: PathBuf,
    /// Directory for histogram.svg and scatter.svg.
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::InfeasibleStats(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Run(args) => cmd_run(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Plot(args) => cmd_plot(args),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let image = load_image(&args.image)?;
    let roi = match &args.roi {
        Some(text) => parse_roi_arg(text, args.track_id, args.frame)?,
        None => Roi {
            track_id: args.track_id,
            frame: args.frame,
            ..Roi::full_frame(image.width(), image.height())
        },
    };
    let outcome = analyze_roi(&image, &roi, &args.config.to_config())?;
    println!(
        "{}",
        serde_json::to_string(&outcome).map_err(input::json_err)?
    );
    Ok(())
}

fn parse_roi_arg(text: &str, track_id: u64, frame: u64) -> Result<Roi, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let err = || CliError::Input(format!("roi must be X,Y,W,H, got `{text}`"));
    if parts.len() != 4 {
        return Err(err());
    }
    let mut nums = [0u32; 4];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| err())?;
    }
    Ok(Roi::new(
        nums[0], nums[1], nums[2], nums[3], track_id, frame,
    ))
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let frames = load_frames(&args.frames)?;
    let records = rois::read_roi_file(&args.rois)?;
    let config = args.config.to_config();
    let run_report = process_sequence(&frames, &records, &config)?;

    report::write_report_bundle(&run_report, &args.out)?;
    if args.svg {
        write_svgs(&run_report, &args.out)?;
    }
    println!(
        "{} rois over {} frames -> {}",
        run_report.rows.len(),
        frames.len(),
        args.out.display()
    );

    // A requested global fit that cannot exist is a statistics failure even
    // though the report was written.
    if config.grouping == Grouping::Global {
        if let Some(GroupFitStatus::Failed {
            reason,
            infeasible: true,
        }) = run_report
            .fits
            .iter()
            .find(|f| f.group == GLOBAL_GROUP)
            .map(|f| &f.status)
        {
            return Err(CliError::InfeasibleStats(format!(
                "global fit failed: {reason}"
            )));
        }
    }
    Ok(())
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let pe_values = read_pe_csv(&args.input)?;
    let unit = shift_to_unit(&pe_values)?;
    let params = fit_beta_mom(&unit)?.with_shift(1.0);
    let class = classify_texture(&params, args.beta_threshold);
    let out = serde_json::json!({
        "alpha": params.alpha,
        "beta": params.beta,
        "support_shift": params.support_shift,
        "count": pe_values.len(),
        "class": class,
    });
    println!("{out}");
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let kind = match args.kind {
        SynthKindArg::Blank => SynthKind::Blank,
        SynthKindArg::Step => SynthKind::Step {
            low: args.low,
            high: args.high,
        },
        SynthKindArg::Stripes => SynthKind::Stripes {
            period: args.period,
        },
        SynthKindArg::BernoulliMask => SynthKind::BernoulliMask {
            density: args.density,
        },
    };
    let spec = SynthSpec::new(kind, args.width, args.height, args.seed);
    let image = if args.mask {
        pgm::mask_to_image(&edge_excess::gen_mask(&spec)?)
    } else {
        edge_excess::gen_image(&spec)?
    };
    pgm::write_pgm_file(&image, &args.out)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<(), CliError> {
    let bytes = std::fs::read(&args.report)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.report.display())))?;
    let run_report: RunReport = serde_json::from_slice(&bytes).map_err(input::json_err)?;
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.out_dir.display())))?;
    write_svgs(&run_report, &args.out_dir)?;
    println!("wrote plots to {}", args.out_dir.display());
    Ok(())
}

fn write_svgs(run_report: &RunReport, dir: &std::path::Path) -> Result<(), CliError> {
    let overlay = overlay_fit(run_report);
    let histogram = svg::render_histogram_svg(&run_report.histogram, overlay.as_ref());
    std::fs::write(dir.join("histogram.svg"), histogram)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let scatter = svg::render_scatter_svg(&run_report.scatter, run_report.config.beta_threshold);
    std::fs::write(dir.join("scatter.svg"), scatter).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(())
}

/// Picks the density to draw over the histogram: the global fit when
/// present, otherwise the fit of the only group.
fn overlay_fit(run_report: &RunReport) -> Option<BetaParams> {
    if let Some(params) = run_report.fitted_params(GLOBAL_GROUP) {
        return Some(params);
    }
    match run_report.fits.as_slice() {
        [only] => run_report.fitted_params(&only.group),
        _ => None,
    }
}
