use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gencluster::verify::DEFAULT_RNG_SEED;

/// Generalised cluster algebras, type C triangulations and epsilon-characters.
#[derive(Debug, Parser)]
#[command(name = "gencluster", version)]
pub struct Cli {
    /// Suppress human-readable output; artifacts are still written.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a mutation sequence to a seed.
    Mutate(MutateArgs),
    /// Enumerate the exchange graph of a seed.
    Enumerate(EnumerateArgs),
    /// The type C_n algebra: clusters, small variables and bases.
    Typec(TypecArgs),
    /// Epsilon-characters for sl2.
    Sl2(Sl2Args),
    /// Epsilon-characters for sl3 at l = 2, G2 and the conjectural seeds.
    Sl3(Sl3Args),
    /// Verify the isomorphisms onto Grothendieck rings.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// Seed JSON file.
    #[arg(long)]
    pub seed: PathBuf,
    /// Comma-separated directions, counted from 1.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sequence: Vec<usize>,
    /// Write the mutated seed as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Seed JSON file.
    #[arg(long)]
    pub seed: PathBuf,
    #[command(flatten)]
    pub graph: GraphOutput,
}

#[derive(Debug, Args)]
pub struct GraphOutput {
    /// Write the exchange graph in DOT format.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the exchange graph as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Stop after this many seeds.
    #[arg(long, default_value_t = 100_000)]
    pub max_nodes: usize,
    /// Stop below this BFS depth.
    #[arg(long, default_value_t = 64)]
    pub max_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    /// Monomials in the small variables.
    S,
    /// Powers of lambda times cluster monomials.
    M,
    /// Chebyshev polynomials in lambda times cluster monomials.
    B,
}

#[derive(Debug, Args)]
pub struct TypecArgs {
    /// Rank n of the algebra.
    #[arg(long)]
    pub n: usize,
    /// List the clusters and cluster variables.
    #[arg(long)]
    pub enumerate: bool,
    /// Express a cluster variable such as `x:0,6` in the small variables.
    #[arg(long, value_name = "ORBIT")]
    pub express_small: Vec<String>,
    /// Apply Phi to a monomial such as `lambda*x:0,4`.
    #[arg(long, value_name = "MONOMIAL")]
    pub phi: Vec<String>,
    /// Apply Psi to small-variable exponents such as `1,0,2,1`.
    #[arg(long, value_name = "EXPONENTS")]
    pub psi: Vec<String>,
    /// List the elements of a basis up to `--bound`.
    #[arg(long, value_enum)]
    pub basis: Option<BasisKind>,
    /// Degree bound for `--basis`.
    #[arg(long, default_value_t = 6)]
    pub bound: usize,
    /// Write everything computed as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Sl2Args {
    /// Order of epsilon squared.
    #[arg(long)]
    pub l: usize,
    /// Write the result as JSON.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub action: Sl2Action,
}

#[derive(Debug, Subcommand)]
pub enum Sl2Action {
    /// Print one character.
    Char(Sl2CharArgs),
    /// Decompose a product of simple modules.
    Decompose {
        /// JSON array of labels.
        #[arg(long)]
        labels: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Sl2CharArgs {
    /// KR module of the string `d,k`.
    #[arg(long, value_name = "D,K")]
    pub string: Option<String>,
    /// The central class z.
    #[arg(long)]
    pub z: bool,
    /// Frobenius pullback of the a-th symmetric power.
    #[arg(long, value_name = "A")]
    pub frobenius: Option<u32>,
    /// Simple module given by a label JSON file.
    #[arg(long, value_name = "FILE")]
    pub label: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum G2Action {
    /// Enumerate the exchange graph.
    Enumerate,
}

#[derive(Debug, Args)]
pub struct Sl3Args {
    /// Print the fundamental characters at l = 2.
    #[arg(long)]
    pub chars: bool,
    /// Decompose the product of the labels in a JSON array.
    #[arg(long, value_name = "FILE")]
    pub decompose: Option<PathBuf>,
    /// Operate on the G2 seed.
    #[arg(long, value_enum)]
    pub g2: Option<G2Action>,
    /// Run Laurent trials on the conjectural seed.
    #[arg(long)]
    pub conjecture: bool,
    /// Level of the conjectural seed.
    #[arg(long, default_value_t = 3)]
    pub l: usize,
    /// Exchange matrix JSON `{"B": [[...]], "d": [...]}` replacing the generated one.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Number of random mutation sequences.
    #[arg(long, default_value_t = 100)]
    pub laurent_trials: usize,
    /// Maximal sequence length.
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,
    /// Seed of the random sequences.
    #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
    pub rng_seed: u64,
    #[command(flatten)]
    pub graph: GraphOutput,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub target: VerifyTarget,
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    /// Type C_{l-1} algebra onto the sl2 Grothendieck ring.
    Phi {
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// G2 algebra onto the sl3 Grothendieck ring at l = 2.
    Eta {
        #[command(flatten)]
        common: VerifyCommon,
    },
}

#[derive(Debug, Args)]
pub struct VerifyCommon {
    /// Degree bound for basis checks.
    #[arg(long, default_value_t = 6)]
    pub bound: usize,
    /// Seed of the random product checks.
    #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
    pub rng_seed: u64,
    /// Write the full report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}
