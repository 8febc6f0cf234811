use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod format;

#[derive(Parser)]
#[command(name = "cq", version, about = "Cluster algebras, quiver Grassmannians and truncated q-characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Built-in graph: a2, a3, a4, d4, d5, e6 or kronecker.
    #[arg(long, default_value = "a3", conflicts_with = "graph_file")]
    graph: String,
    /// JSON file `{"vertices": [...], "edges": [[a, b], ...]}`.
    #[arg(long)]
    graph_file: Option<PathBuf>,
    /// Comma-separated vertices of I0; defaults to the graph's own choice.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<String>>,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Machine-readable JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuiverKind {
    Decorated,
    X,
    Z,
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepCarrier {
    Principal,
    Decorated,
    Sigma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    TSystem,
    Kr,
    Hl,
    CommonCluster,
    OddVanishing,
    Factorizations,
    Positivity,
    Kronecker,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print one of the quivers attached to a bipartite graph.
    Quiver {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "x")]
        kind: QuiverKind,
        #[command(flatten)]
        out: Output,
    },
    /// Mutate a seed along a sequence of vertices and print the result as JSON.
    Mutate {
        /// Seed JSON file; without it the initial x-quiver seed of `--graph` is used.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        /// Drop the frozen vertices when starting from `--graph`.
        #[arg(long)]
        coefficient_free: bool,
        /// Vertex to mutate at; repeat for a path.
        #[arg(long = "at")]
        at: Vec<String>,
    },
    /// Enumerate cluster variables and clusters by breadth-first mutation.
    Clusters {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        coefficient_free: bool,
        #[arg(long, default_value_t = 1000)]
        max_seeds: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Count subrepresentations of a generic representation over several primes.
    Grcount {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "principal")]
        on: RepCarrier,
        /// Dimension vector, comma-separated in vertex order.
        #[arg(long, value_delimiter = ',', required = true)]
        dim: Vec<usize>,
        /// Restrict to one subdimension vector.
        #[arg(long, value_delimiter = ',')]
        sub: Option<Vec<usize>>,
        /// Primes to count over; defaults to enough for every subdimension.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Root seed for the random number generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Truncated q-character of a decorated dimension vector.
    Qchar {
        #[command(flatten)]
        graph: GraphArgs,
        /// `w1:w1',w2:w2',...` in vertex order.
        #[arg(long)]
        w: String,
        /// Keep the grading variable `t`.
        #[arg(long)]
        t: bool,
        /// Print `Y_{i,q^n}` instead of `Y[i,n]`.
        #[arg(long)]
        shorthand: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical decomposition of a dimension vector.
    Decomp {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "principal")]
        on: RepCarrier,
        #[arg(long, value_delimiter = ',', required = true)]
        dim: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite; exits with status 1 if any case fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1000)]
        max_seeds: usize,
        /// Pairs for common-cluster, random W for factorizations.
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Largest entry of the dimension vectors swept by odd-vanishing.
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock timing in JSON output.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Start the explorer HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = cq_explorer::DEFAULT_PORT)]
        port: u16,
        /// Directory for session snapshots.
        #[arg(long)]
        state_dir: Option<PathBuf>,
    },
}

/// Failures that end a run.
enum Failure {
    Usage(String),
    Suite,
}

impl From<cq_core::Error> for Failure {
    fn from(e: cq_core::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("CQ_THREADS") else { return Ok(()) };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("CQ_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| commands::run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("cq: {msg}");
            ExitCode::from(2)
        }
    }
}
