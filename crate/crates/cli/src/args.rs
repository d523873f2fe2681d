use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

fn prob(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is not a probability in [0, 1]"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

fn method(s: &str) -> Result<u8, String> {
    match s.parse::<u8>() {
        Ok(m @ 1..=4) => Ok(m),
        _ => Err(format!("method must be 1, 2, 3 or 4, got {s:?}")),
    }
}

/// Directed information estimation with context-tree weighting.
///
/// Every output starts with `# key=value` lines recording the full run
/// configuration. Defaults marked [artifact default] are choices of this tool
/// rather than values from the reference experiments.
#[derive(Debug, Parser)]
#[command(name = "dirinfo", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate I(X->Y), I(Y->X) and I(X;Y) on a simulated or loaded pair
    Estimate(EstimateArgs),
    /// Generate a pair from a synthetic source
    Simulate(SimulateArgs),
    /// Scan the shifted directed information over delays 0..=d-max
    DelayScan(DelayScanArgs),
    /// Classify the causal relation between X and Y
    Causality(CausalityArgs),
    /// Running estimates on a grid of sample sizes, against the analytic rate
    Convergence(ConvergenceArgs),
    /// Quantize a price series (or an aligned pair) into ternary symbols
    Quantize(QuantizeArgs),
    /// Print closed-form and exact reference values
    Oracle(OracleArgs),
}

/// Where the pair comes from.
#[derive(Debug, Clone, Subcommand)]
pub enum Input {
    /// X symmetric binary Markov chain, Y = X through a BSC
    MarkovBsc {
        /// Flip probability of X
        #[arg(long, default_value_t = 0.3, value_parser = prob)]
        p: f64,
        /// BSC crossover probability
        #[arg(long, default_value_t = 0.2, value_parser = prob)]
        eps: f64,
    },
    /// X Markov chain through the two-tap ISI channel Y_i = X_{i-D'} + X_{i-D'-1} + W_i
    Isi {
        /// Flip probability of X [artifact default]
        #[arg(long, default_value_t = 0.3, value_parser = prob)]
        p: f64,
        /// Channel delay D'
        #[arg(long, default_value_t = 2)]
        delay: usize,
        /// Noise probability of W [artifact default]
        #[arg(long, default_value_t = 0.1, value_parser = prob)]
        eps: f64,
    },
    /// Y_i = X_i through BSC(alpha), X_{i+1} = Y_i through BSC(beta)
    CoupledBsc {
        #[arg(long, default_value_t = 0.1, value_parser = prob)]
        alpha: f64,
        #[arg(long, default_value_t = 0.2, value_parser = prob)]
        beta: f64,
    },
    /// X i.i.d. Bernoulli(q); Y a copy of X or independent Bernoulli(q)
    Iid {
        /// [artifact default]
        #[arg(long, default_value_t = 0.5, value_parser = prob)]
        q: f64,
        /// Y = X instead of independent
        #[arg(long)]
        copy: bool,
    },
    /// Read X and Y from files
    Files(FileInput),
}

#[derive(Debug, Clone, Args)]
pub struct FileInput {
    /// Single-column symbol file, or date,value prices with --prices
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    /// Treat both files as date,value price series: align on common dates and quantize
    #[arg(long)]
    pub prices: bool,
    /// Quantization band half-width for --prices
    #[arg(long, default_value_t = 0.008, value_parser = positive)]
    pub threshold: f64,
    /// Use log returns instead of relative changes for --prices [artifact default: relative]
    #[arg(long)]
    pub log_returns: bool,
    /// Pair x's return j with y's return j + offset (--prices only) [artifact default]
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
}

/// Flags shared by every command that simulates data.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Sample length (simulated sources; truncates loaded files) [artifact default: 100000 for sources]
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// RNG seed [artifact default: 1]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Context tree depth D [default: 3 for markov-bsc, 6 for isi; artifact default 2 for coupled-bsc, 3 otherwise]
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(subcommand)]
    pub input: Input,
    #[command(flatten)]
    pub run: RunArgs,
    /// Estimators, comma separated [artifact default: 1,2,3,4]
    #[arg(long, global = true, value_delimiter = ',', value_parser = method)]
    pub method: Option<Vec<u8>>,
    /// Emit the running estimate of I(X->Y) at every step instead of the summary
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(subcommand)]
    pub input: Input,
    #[command(flatten)]
    pub run: RunArgs,
    /// Also write X as a single-column symbol file
    #[arg(long, global = true)]
    pub x_out: Option<PathBuf>,
    /// Also write Y as a single-column symbol file
    #[arg(long, global = true)]
    pub y_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DelayScanArgs {
    #[command(subcommand)]
    pub input: Input,
    #[command(flatten)]
    pub run: RunArgs,
    /// Largest delay scanned [artifact default: 5]
    #[arg(long, global = true)]
    pub d_max: Option<usize>,
    /// Estimator [artifact default: 2]
    #[arg(long, global = true, value_parser = method)]
    pub method: Option<u8>,
    /// Smallest estimate counted as a detection, in bits [artifact default: 0.02]
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CausalityArgs {
    #[command(subcommand)]
    pub input: Input,
    #[command(flatten)]
    pub run: RunArgs,
    /// Estimator [artifact default: 2]
    #[arg(long, global = true, value_parser = method)]
    pub method: Option<u8>,
    /// Mutual information below which the pair is independent, in bits [artifact default: 0.02]
    #[arg(long, global = true)]
    pub tau: Option<f64>,
    /// Dominance ratio between the two directions [artifact default: 2]
    #[arg(long, global = true)]
    pub rho: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(subcommand)]
    pub input: Input,
    #[command(flatten)]
    pub run: RunArgs,
    /// Estimators, comma separated [artifact default: 1,2,3,4]
    #[arg(long, global = true, value_delimiter = ',', value_parser = method)]
    pub method: Option<Vec<u8>>,
    /// Number of seeds, starting at --seed [artifact default: 3]
    #[arg(long, global = true)]
    pub seeds: Option<u64>,
    /// Sample sizes, comma separated [artifact default: 1-2-5 steps from 1000 up to --n]
    #[arg(long, global = true, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct QuantizeArgs {
    /// date,value price file
    #[arg(long)]
    pub input: PathBuf,
    /// Second price file; output is the aligned pair
    #[arg(long)]
    pub pair: Option<PathBuf>,
    /// Band half-width
    #[arg(long, default_value_t = 0.008, value_parser = positive)]
    pub threshold: f64,
    /// Use log returns instead of relative changes [artifact default: relative]
    #[arg(long)]
    pub log_returns: bool,
    /// Pair input's return j with the second file's return j + offset [artifact default]
    #[arg(long, default_value_t = 0)]
    pub offset: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub which: Oracle,
    /// Decimal places printed [artifact default]
    #[arg(long, global = true, default_value_t = 4)]
    pub digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Oracle {
    /// I(Y->X) rate for a Markov chain X through a BSC
    MarkovBsc {
        #[arg(long, default_value_t = 0.3, value_parser = prob)]
        p: f64,
        #[arg(long, default_value_t = 0.2, value_parser = prob)]
        eps: f64,
        /// Also print the exact n-step value by enumeration
        #[arg(long)]
        exact_n: Option<usize>,
    },
    /// Directed, reverse directed and mutual information rates of coupled BSCs
    CoupledBsc {
        #[arg(long, default_value_t = 0.1, value_parser = prob)]
        alpha: f64,
        #[arg(long, default_value_t = 0.2, value_parser = prob)]
        beta: f64,
        /// Also print the exact n-step values by enumeration
        #[arg(long)]
        exact_n: Option<usize>,
    },
    /// Binary entropy H_b(p)
    BinaryEntropy {
        #[arg(long, value_parser = prob)]
        p: f64,
    },
    /// CTW pointwise redundancy bound C5 log n + C6
    CtwBound {
        #[arg(long, default_value_t = 2)]
        gamma: usize,
        #[arg(long, default_value_t = 1)]
        states: usize,
        #[arg(long)]
        n: u64,
    },
}
