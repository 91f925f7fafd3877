mod commands;
mod config;
mod errors;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rleseg::{EvalMode, SegmentMode, ThresholdMode};

use config::{Overrides, Settings};

/// Word and character segmentation of run-length-encoded text lines.
#[derive(Debug, Parser)]
#[command(name = "rleseg", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// key = value file; flags given on the command line take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Gap threshold: auto, fixed:<width> or scale:<factor>
    #[arg(long, global = true, value_parser = parse_threshold)]
    threshold: Option<ThresholdMode>,
    /// Fraction of the word height trimmed top and bottom
    #[arg(long, global = true)]
    roi_t: Option<f64>,
    /// Pieces shorter than alpha x mean are merged
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Pieces longer than beta x mean are split
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Minimum overlap ratio for a one-to-one match
    #[arg(long = "overlap", alias = "overlap-min", global = true)]
    overlap_min: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn parse_threshold(s: &str) -> Result<ThresholdMode, String> {
    s.parse().map_err(|e: rleseg::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Words,
    Chars,
}

impl From<ModeArg> for SegmentMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Words => SegmentMode::Words,
            ModeArg::Chars => SegmentMode::Chars,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EvalArg {
    Word,
    Char,
}

impl From<EvalArg> for EvalMode {
    fn from(m: EvalArg) -> Self {
        match m {
            EvalArg::Word => EvalMode::Word,
            EvalArg::Char => EvalMode::Char,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Handwritten,
    Printed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a PBM (P1 or P4) image to the RLE text format
    Encode { pbm: PathBuf, rle: PathBuf },
    /// Convert an RLE file back to PBM
    Decode {
        rle: PathBuf,
        pbm: PathBuf,
        /// Write plain P1 instead of binary P4
        #[arg(long)]
        ascii: bool,
    },
    /// Segment one line (.rle) or every line listed in a manifest
    Segment {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "words")]
        mode: ModeArg,
        /// Write JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score predicted records against ground truth
    Evaluate {
        pred: PathBuf,
        truth: PathBuf,
        #[arg(long, value_enum, default_value = "word")]
        mode: EvalArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the compressed and pixel paths on every .rle file in a directory
    Bench {
        rle_dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[arg(long, value_enum, default_value = "chars")]
        mode: ModeArg,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic corpus with exact ground truth
    Synth {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        lines: usize,
        #[arg(long, default_value_t = 5)]
        words_per_line: usize,
        #[arg(long, default_value_t = 12)]
        inter_gap: usize,
        #[arg(long, default_value_t = 3)]
        intra_gap: usize,
        #[arg(long, default_value_t = 0.0)]
        touch_rate: f64,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        /// Fixed line width; words are added until the line is full
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long, value_enum, default_value = "handwritten")]
        style: StyleArg,
    },
    /// Draw separator columns from a segmentation onto the line image
    Render {
        rle: PathBuf,
        seg_json: PathBuf,
        out_pbm: PathBuf,
        #[arg(long)]
        ascii: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { errors::USAGE } else { errors::OK });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(errors::OK),
        Err(e) => {
            eprintln!("rleseg: {e:#}");
            ExitCode::from(errors::exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let g = cli.global;
    let overrides = Overrides {
        threshold: g.threshold,
        roi_t: g.roi_t,
        alpha: g.alpha,
        beta: g.beta,
        overlap_min: g.overlap_min,
        seed: g.seed,
    };
    let settings = Settings::resolve(g.config.as_deref(), &overrides)?;

    match cli.command {
        Command::Encode { pbm, rle } => commands::encode(&pbm, &rle),
        Command::Decode { rle, pbm, ascii } => commands::decode(&rle, &pbm, ascii),
        Command::Segment { input, mode, out } => commands::segment(&input, mode.into(), &settings, out.as_deref()),
        Command::Evaluate { pred, truth, mode, out } => {
            commands::evaluate(&pred, &truth, mode.into(), &settings, out.as_deref())
        }
        Command::Bench { rle_dir, repeat, mode, out } => {
            commands::bench(&rle_dir, repeat, mode.into(), &settings, out.as_deref())
        }
        Command::Synth {
            out,
            lines,
            words_per_line,
            inter_gap,
            intra_gap,
            touch_rate,
            scale,
            width,
            height,
            style,
        } => {
            let params = rleseg::synth::SynthParams {
                lines,
                words_per_line,
                inter_gap,
                intra_gap,
                touch_rate,
                seed: settings.seed,
                scale,
                width,
                height,
                roi_t: settings.roi_t,
                style: match style {
                    StyleArg::Handwritten => rleseg::synth::GlyphStyle::Handwritten,
                    StyleArg::Printed => rleseg::synth::GlyphStyle::Printed,
                },
                ..Default::default()
            };
            commands::synth(&out, &params)
        }
        Command::Render { rle, seg_json, out_pbm, ascii } => render::run(&rle, &seg_json, &out_pbm, ascii),
    }
}
