use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use emopal::annotator::DEFAULT_TOP_K;
use emopal::index::{build_index, query_index};
use emopal::infometrics::{coding_overhead, RGB_COLOR_SPACE};
use emopal::ingest::load_image;
use emopal::report::{annotate_image, ReportPayload};
use emopal::sampstats::{count_moments, regime_agreement, Mode, PopulationSpec};
use emopal::svg::render_histogram;
use emopal::{Error, Palette, Regime, Result, SampleSpec};

/// Annotate images with emotion words from a color-emotion palette.
///
/// Images are read as 8-bit sRGB. PNG and JPEG are supported; alpha is
/// ignored, grayscale is expanded to RGB, and 16-bit channels are reduced to
/// 8 bits by keeping the high byte.
#[derive(Parser)]
#[command(name = "emopal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    With,
    Without,
    Full,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::With => Regime::WithReplacement,
            RegimeArg::Without => Regime::WithoutReplacement,
            RegimeArg::Full => Regime::FullScan,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct SamplingArgs {
    /// Palette file (`name ; R,G,B ; word, word, ...`); defaults to the bundled stand-in palette
    #[arg(long)]
    palette: Option<PathBuf>,
    /// Pixels to draw (ignored for a full scan)
    #[arg(long, default_value_t = 100)]
    sample_size: usize,
    #[arg(long, value_enum, default_value = "with")]
    regime: RegimeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    top_k: usize,
}

impl SamplingArgs {
    fn spec(&self) -> SampleSpec {
        SampleSpec::new(self.sample_size, self.regime.into(), self.seed)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Annotate one image and write its report
    Annotate {
        image: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Report destination (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the top-k word counts as an SVG bar chart
        #[arg(long)]
        histogram: Option<PathBuf>,
        /// Print per-phase timing and match counts to stderr
        #[arg(long)]
        timing: bool,
    },
    /// Annotate every image in a directory into an index file
    Index {
        dir: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// List indexed images annotated with a word
    Query {
        index: PathBuf,
        word: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Count moments for with/without replacement draws, and optionally
    /// regime agreement measured on an image
    Stats {
        /// Population size N (ignored when --image is given)
        #[arg(long)]
        population: Option<u64>,
        /// Comma-separated category counts m_i summing to N
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<u64>>,
        #[arg(long)]
        image: Option<PathBuf>,
        #[arg(long)]
        palette: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        sample_size: usize,
        #[arg(long, default_value_t = 1)]
        top_k: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Information diagnostics for one image
    Diag {
        image: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_palette(path: Option<&Path>) -> Result<Palette> {
    match path {
        Some(p) => Palette::open(p),
        None => Ok(Palette::standin()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io { path: path.to_path_buf(), source: e }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Annotate { image, sampling, out, format, histogram, timing } => {
            let palette = load_palette(sampling.palette.as_deref())?;
            let loaded = load_image(&image)?;
            let a = annotate_image(&loaded.pixels, &palette, &sampling.spec(), sampling.top_k)?;
            if timing {
                eprintln!(
                    "sample {:?}, match {:?} ({} nearest-entry matches), rank {:?}",
                    a.stats.sample, a.stats.matching, a.stats.nearest_matches, a.stats.ranking
                );
            }
            let payload = ReportPayload::new(&image.to_string_lossy(), &loaded.hash, &palette, &a.report, &a.diagnostics);
            if let Some(path) = histogram {
                let title = format!("{} most frequent words, {}", payload.top_words.len(), image.display());
                emit(Some(&path), &render_histogram(&title, &payload.top_words))?;
            }
            let text = match format {
                Format::Json => payload.to_json()?,
                Format::Text => payload.to_text(),
            };
            emit(out.as_deref(), &text)
        }
        Command::Index { dir, sampling, out } => {
            let palette = load_palette(sampling.palette.as_deref())?;
            let summary = build_index(&dir, &palette, &sampling.spec(), sampling.top_k, &out)?;
            for s in &summary.skipped {
                eprintln!("skipped {}: {}", s.path, s.reason);
            }
            emit(None, &to_json(&summary)?)
        }
        Command::Query { index, word, limit } => {
            let hits = query_index(&index, &word, limit)?;
            emit(None, &to_json(&hits)?)
        }
        Command::Stats { population, counts, image, palette, sample_size, top_k, trials, seed, out } => {
            let value = if let Some(image) = image {
                let palette = load_palette(palette.as_deref())?;
                let img = load_image(&image)?.pixels;
                let agreement = regime_agreement(&img, &palette, sample_size, top_k, trials, seed)?;
                let c = agreement.without_replacement.closed_form.c;
                json!({ "N": img.len(), "n": sample_size, "c": c, "agreement": agreement })
            } else {
                let pop = match (population, counts) {
                    (_, Some(m)) => PopulationSpec::new(m)?,
                    (Some(n), None) => PopulationSpec::new(vec![n])?,
                    (None, None) => {
                        return Err(Error::InvalidArgument("stats needs --population, --counts or --image".into()))
                    }
                };
                if let Some(n) = population {
                    if n != pop.total() {
                        return Err(Error::InvalidArgument(format!("counts sum to {}, not {n}", pop.total())));
                    }
                }
                let n = sample_size as u64;
                let hyper = count_moments(&pop, n, Mode::Hypergeometric)?;
                let multi = count_moments(&pop, n, Mode::Multinomial)?;
                json!({
                    "N": pop.total(),
                    "n": n,
                    "c": hyper.c,
                    "c_rounded": format!("{:.3}", hyper.c),
                    "hypergeometric": hyper,
                    "multinomial": multi,
                })
            };
            emit(out.as_deref(), &to_json(&value)?)
        }
        Command::Diag { image, sampling, out } => {
            let palette = load_palette(sampling.palette.as_deref())?;
            let img = load_image(&image)?.pixels;
            let a = annotate_image(&img, &palette, &sampling.spec(), sampling.top_k)?;
            let overhead = coding_overhead(palette.vocabulary().len() as u64, RGB_COLOR_SPACE)?;
            let value = json!({
                "image": image.to_string_lossy(),
                "N": img.len(),
                "n": a.report.n(),
                "palette_entries": palette.len(),
                "vocabulary_size": palette.vocabulary().len(),
                "coding_overhead": overhead,
                "diagnostics": a.diagnostics,
            });
            emit(out.as_deref(), &to_json(&value)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("emopal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
