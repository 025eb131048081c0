mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use geomlex_core::Error;

/// Representational-geometry analyses for labeled word embeddings.
///
/// Every command prints one JSON report. Exit status is 0 on success, 1 on
/// data or validation errors (JSON error object on stderr) and 2 on usage
/// errors.
#[derive(Debug, Parser)]
#[command(name = "geomlex", version)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads; 1 is the bit-exact serial reference.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isotropy score of an embedding space.
    Isoscore(EmbeddingsArg),
    /// Within- and cross-category cosine similarity distributions.
    Simdist(SimdistArgs),
    /// Linear CKA between two aligned embedding sets.
    Cka(CkaArgs),
    /// Pairwise CKA matrix across two or more aligned sets.
    Consistency(ConsistencyArgs),
    /// Category discriminability index per category.
    Cdi(SeededEmbeddings),
    /// Same-different mean average precision.
    Map(EmbeddingsArg),
    /// Category centroids.
    Centroids(EmbeddingsArg),
    /// Nearest centroids to a query category.
    Neighbors(NeighborsArgs),
    /// Fit a trigram phoneme model on a lexicon.
    FitPlm(PlmArgs),
    /// Phonological information content per word.
    Pic(PicArgs),
    /// Per-category CDI joined with frequency, length and PIC, with correlations.
    Predictors(PredictorsArgs),
    /// Pearson correlation of TSV columns against a target column.
    Correlate(CorrelateArgs),
    /// Mean, extrema and population std of per-run results.
    Summary(SummaryArgs),
    /// Spot-check a training objective on explicit inputs.
    Losses(LossesArgs),
    /// Generate a synthetic clustered embedding set and lexicon.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct EmbeddingsArg {
    /// Embedding TSV (label, then components).
    #[arg(long)]
    embeddings: PathBuf,
}

#[derive(Debug, Args)]
pub struct SeededEmbeddings {
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
pub struct SimdistArgs {
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on sampled pairs per group (within, cross).
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_pairs: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    bins: u64,
}

#[derive(Debug, Args)]
pub struct CkaArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    /// Two or more aligned embedding TSVs.
    #[arg(long, num_args = 2.., required = true)]
    embeddings: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NeighborsArgs {
    #[arg(long)]
    embeddings: PathBuf,
    /// Query category label.
    #[arg(long)]
    query: String,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Debug, Args)]
pub struct PlmArgs {
    /// Lexicon TSV (word, tab, space-separated phonemes).
    #[arg(long)]
    lexicon: PathBuf,
    /// Add-k smoothing constant.
    #[arg(long, default_value_t = 1.0)]
    smoothing: f64,
}

#[derive(Debug, Args)]
pub struct PicArgs {
    /// Training lexicon for the phoneme model.
    #[arg(long)]
    lexicon: PathBuf,
    /// Words to score; defaults to the training lexicon.
    #[arg(long)]
    words: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    smoothing: f64,
}

#[derive(Debug, Args)]
pub struct PredictorsArgs {
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    smoothing: f64,
    /// Categories with fewer exemplars are left out.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    min_exemplars: u64,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Tab-separated table with a header line.
    #[arg(long)]
    input: PathBuf,
    /// Column every other numeric column is correlated against.
    #[arg(long)]
    target: String,
}

#[derive(Debug, Args)]
pub struct SummaryArgs {
    /// Comma-separated run results.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "input",
        required_unless_present = "input"
    )]
    values: Vec<f64>,
    /// File of whitespace-separated run results.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossKind {
    Reconstruction,
    Decoding,
    Triplet,
}

#[derive(Debug, Args)]
pub struct LossesArgs {
    #[arg(long, value_enum)]
    kind: LossKind,
    /// Predicted feature frames (reconstruction).
    #[arg(long, required_if_eq("kind", "reconstruction"))]
    predicted: Option<PathBuf>,
    /// Target feature frames (reconstruction).
    #[arg(long, required_if_eq("kind", "reconstruction"))]
    target: Option<PathBuf>,
    /// Per-step phoneme probabilities with an inventory header (decoding).
    #[arg(long, required_if_eq("kind", "decoding"))]
    probs: Option<PathBuf>,
    /// Target phoneme string, e.g. "K AE T" (decoding).
    #[arg(long, required_if_eq("kind", "decoding"))]
    phonemes: Option<String>,
    /// Embedding batch (triplet).
    #[arg(long, required_if_eq("kind", "triplet"))]
    embeddings: Option<PathBuf>,
    /// Anchor/positive row-index pairs, one per line (triplet).
    #[arg(long, required_if_eq("kind", "triplet"))]
    pairs: Option<PathBuf>,
    #[arg(long, default_value_t = 0.4)]
    margin: f64,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 10)]
    categories: usize,
    #[arg(long, default_value_t = 8)]
    exemplars: usize,
    #[arg(long, default_value_t = 16)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    separation: f64,
    #[arg(long, default_value_t = 0.1)]
    spread: f64,
    /// Leading coordinates that carry variation; defaults to all.
    #[arg(long)]
    utilized_dims: Option<usize>,
    /// Centroids on orthogonal axes instead of Gaussian draws.
    #[arg(long)]
    orthogonal: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_embeddings: PathBuf,
    #[arg(long)]
    out_lexicon: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), Error> {
    let threads = cli.threads.map_or(0, usize::from);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;
    let mut report = pool.install(|| commands::dispatch(&cli.command))?;
    if let Some(t) = cli.threads {
        report.param("threads", usize::from(t));
    }
    let mut text = report.to_json();
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
            ) =>
        {
            let _ = e.print();
            let _ = writeln!(std::io::stderr(), "\n{}", Cli::command().render_help());
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            let _ = writeln!(std::io::stderr(), "{body}");
            ExitCode::from(1)
        }
    }
}
