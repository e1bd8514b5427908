use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "paperrank", version, about = "Rank papers, authors and journals from a citation graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a block-model citation graph and its group map.
    Synth(SynthArgs),
    /// Score every paper of a citation graph.
    Rank(RankArgs),
    /// Histogram the unit scores of a rank file.
    Hist(HistArgs),
    /// Run all four scorings and correlate the heuristics with PaperRank.
    Compare(CompareArgs),
    /// Fold paper scores into author or journal ranks.
    Aggregate(AggregateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Bare citation counts.
    Citations,
    /// Citations weighted by one over the citing paper's reference count.
    Normalized,
    /// Damped random-reader PaperRank.
    Paperrank,
    /// Undamped dummy-paper model.
    Dummy,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Citations => "citations",
            Method::Normalized => "normalized",
            Method::Paperrank => "paperrank",
            Method::Dummy => "dummy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Authors,
    Journals,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["example", "spec"]))]
pub struct SynthArgs {
    /// Reference experiment 1..=6.
    #[arg(long)]
    pub example: Option<usize>,
    /// JSON block-model spec `{"group_sizes": [..], "mean_refs": [[..]]}`.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge list to write; the group map goes next to it as `<stem>.groups.csv`.
    #[arg(short, long)]
    pub out: PathBuf,
    /// Override the group map path.
    #[arg(long)]
    pub groups_out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct SolverArgs {
    /// Probability of following a reference.
    #[arg(short = 'p', long = "damping", default_value_t = 0.99)]
    pub damping: f64,
    /// 1-norm residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Iteration budget; defaults to 10 * ceil(log(tol) / log(p)).
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Number of papers; defaults to the file header or 1 + the largest id.
    #[arg(long)]
    pub n_papers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Paperrank)]
    pub method: Method,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// For `--method dummy` a second file `<stem>.stripped.csv` is written.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    pub ranks: PathBuf,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub bins: u32,
    /// `paper_id,group` CSV; emits one count column per group.
    #[arg(long)]
    pub group_map: Option<PathBuf>,
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// `paper_id,group` CSV for per-group mean scores.
    #[arg(long)]
    pub group_map: Option<PathBuf>,
    /// Per-paper scores; the summary goes to `<stem>.summary.csv`.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    pub ranks: PathBuf,
    /// JSON-lines metadata.
    pub metadata: PathBuf,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Reference date `YYYY-MM-DD` of a time window.
    #[arg(long, requires = "window_nu")]
    pub window_t: Option<String>,
    /// Window length in whole years.
    #[arg(long, requires = "window_t")]
    pub window_nu: Option<u32>,
    #[arg(short, long)]
    pub out: PathBuf,
}
