//! Command-line arguments and the top-level driver.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphdsp_core::spectral::Backend;

use crate::commands;
use crate::synth::SeedStrategy;

pub const DEFAULT_SEED: u64 = 20131;

#[derive(Parser, Debug)]
#[command(name = "graphdsp", version, about = "Linear signal processing on graphs")]
pub struct Cli {
    /// Seed for every random choice the command makes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Numeric)]
    pub backend: BackendArg,
    /// Tolerance override, repeatable (e.g. `--tol cluster=1e-6`).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Directory receiving result files and `summary.json`.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Numeric,
    Exact,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Numeric => Backend::Numeric,
            BackendArg::Exact => Backend::Exact,
        }
    }
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = value.trim().parse().map_err(|_| format!("invalid value `{value}` for {name}"))?;
    Ok((name.trim().to_string(), v))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graph file construction.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Generate a synthetic dataset.
    #[command(subcommand)]
    Synth(SynthCmd),
    /// Apply the graph shift once.
    Shift(GraphSignalArgs),
    #[command(subcommand)]
    Filter(FilterCmd),
    /// Graph Fourier transform of a signal.
    Gft(GraphSignalArgs),
    /// Inverse graph Fourier transform of a spectrum.
    Igft {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spectrum: PathBuf,
    },
    /// Linear-prediction coding.
    #[command(subcommand)]
    Lp(LpCmd),
    /// Keep the largest spectral coefficients of a signal.
    Compress(CompressArgs),
    /// Adaptive label classifier.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Churn prediction on call logs.
    #[command(subcommand)]
    Churn(ChurnCmd),
    #[command(subcommand)]
    Spectral(SpectralCmd),
}

#[derive(Args, Debug)]
pub struct GraphSignalArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub signal: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Write a canonical edge file from coordinates (kNN) or an edge list.
    Build(GraphBuildArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
pub struct GraphInput {
    /// `id,x,y[,z]` coordinates; needs `--k`.
    #[arg(long, requires = "k")]
    pub coords: Option<PathBuf>,
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphBuildArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Neighbours per node for the kNN graph.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum SynthCmd {
    /// kNN sensor field with a smooth signal.
    SmoothField {
        #[arg(long, default_value_t = 150)]
        nodes: usize,
        #[arg(long, default_value_t = 11)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Signals to draw; the first goes to `signal.csv`, the rest to
        /// `signal_<k>.csv`.
        #[arg(long, default_value_t = 1)]
        snapshots: usize,
    },
    /// Two planted communities with ±1 labels and a few known seeds.
    TwoBlock {
        #[arg(long, default_value_t = 50)]
        block_size: usize,
        #[arg(long, default_value_t = 0.3)]
        p_in: f64,
        #[arg(long, default_value_t = 0.02)]
        p_out: f64,
        /// Fraction of nodes whose label is known.
        #[arg(long, default_value_t = 0.05)]
        known: f64,
        #[arg(long, value_enum, default_value_t = SeedStrategy::Random)]
        select: SeedStrategy,
    },
    /// Call durations and three months of cumulative churn.
    CallLog {
        #[arg(long, default_value_t = 300)]
        customers: usize,
        #[arg(long, default_value_t = 10)]
        groups: usize,
        #[arg(long, default_value_t = 0.3)]
        p_in: f64,
        #[arg(long, default_value_t = 0.01)]
        p_out: f64,
        #[arg(long, default_value_t = 0.3)]
        at_risk: f64,
        #[arg(long, default_value_t = 0.3)]
        initial: f64,
        #[arg(long, default_value_t = 0.3)]
        contagion: f64,
        #[arg(long, default_value_t = 0.01)]
        noise: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FilterCmd {
    /// Filter a signal with polynomial taps.
    Apply {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        taps: PathBuf,
        #[arg(long)]
        signal: PathBuf,
    },
    /// Taps of the inverse filter.
    Invert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        taps: PathBuf,
    },
    /// Equivalent taps of degree below the minimal polynomial's.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        taps: PathBuf,
    },
    /// Impulse response of taps, or taps recovered from a response.
    Impulse {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "response", required_unless_present = "response")]
        taps: Option<PathBuf>,
        #[arg(long)]
        response: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LpCmd {
    /// Least-squares predictor taps and the prediction residual.
    Fit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value_t = 3)]
        taps: usize,
    },
    /// Fit a predictor and write the quantized code.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value_t = 3)]
        taps: usize,
        #[arg(long, default_value_t = 8)]
        bits: u16,
    },
    /// Reconstruct a signal from a code.
    Decode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        code: PathBuf,
        /// Original signal, to report the reconstruction error.
        #[arg(long)]
        signal: Option<PathBuf>,
    },
    /// Reconstruction error over tap counts and bit depths.
    Sweep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_taps: usize,
        #[arg(long, default_value_t = 16)]
        max_bits: u16,
    },
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub signal: PathBuf,
    /// Number of coefficients to keep.
    #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
    pub keep: Option<usize>,
    /// Error for every kept count from 1 to N.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    Train {
        #[arg(long)]
        graph: PathBuf,
        /// Known labels (`node_id,label`).
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 10)]
        stages: usize,
        /// Training labels; defaults to all known labels.
        #[arg(long, conflicts_with = "split")]
        training: Option<PathBuf>,
        /// Train on every other known label and validate on the rest.
        #[arg(long)]
        split: bool,
    },
    Apply {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        classifier: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        /// Ground truth, to report accuracy on nodes without a known label.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChurnCmd {
    Train {
        /// Call durations as an edge file.
        #[arg(long)]
        calls: PathBuf,
        #[arg(long)]
        current: PathBuf,
        #[arg(long)]
        next: PathBuf,
        #[arg(long, default_value_t = 10)]
        stages: usize,
    },
    Predict {
        #[arg(long)]
        calls: PathBuf,
        #[arg(long)]
        filter: PathBuf,
        #[arg(long)]
        current: PathBuf,
        /// Next month's indicators, to score the prediction.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpectralCmd {
    /// Jordan basis export.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let started = Instant::now();
    match commands::execute(&cli) {
        Ok(name) => {
            eprintln!("{name}: {:.3} s", started.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
