use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::{parse_delimiter, Column};

/// Rank correlation coefficient xi_n: compute, test, simulate, benchmark, verify.
#[derive(Debug, Parser)]
#[command(name = "xicor", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice: an unsigned 64-bit integer, or `random`.
    #[arg(long, global = true, default_value_t = xicor::DEFAULT_SEED.to_string())]
    pub seed: String,

    /// Write JSON here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<String>,

    /// Single-line JSON.
    #[arg(long, global = true)]
    pub compact: bool,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "XICOR_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute xi_n for two columns.
    Compute(ComputeArgs),
    /// Test independence of two columns.
    Test(TestArgs),
    /// Run a simulation study.
    Simulate(SimulateArgs),
    /// Time xi_n plus the asymptotic test over a grid of sizes.
    Bench(BenchArgs),
    /// Cross-check the fast routines against the slow references.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV/TSV file, or `-` for standard input.
    #[arg(long, short, default_value = "-")]
    pub input: String,

    /// X column: 0-based index or header name.
    #[arg(long, short = 'x', default_value = "0")]
    pub x: Column,

    /// Y column: 0-based index or header name.
    #[arg(long, short = 'y', default_value = "1")]
    pub y: Column,

    /// Field delimiter: one character, or `tab`.
    #[arg(long, short, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Also report max(xi_n(X, Y), xi_n(Y, X)).
    #[arg(long)]
    pub symmetrize: bool,

    /// Also average xi_n over this many random tie-breaks of X.
    #[arg(long, value_name = "DRAWS")]
    pub tie_average: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Asymptotic,
    Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatisticArg {
    Xi,
    Symmetrized,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value_t = MethodArg::Asymptotic)]
    pub method: MethodArg,

    /// Use the continuous null variance 2/5 instead of estimating it.
    #[arg(long)]
    pub y_continuous: bool,

    /// Accept --y-continuous even when the y column has ties.
    #[arg(long, requires = "y_continuous")]
    pub force_continuous: bool,

    #[arg(long, alias = "n-permutations", default_value_t = 999)]
    pub n_perms: usize,

    /// Statistic for the permutation test.
    #[arg(long, value_enum, default_value_t = StatisticArg::Xi)]
    pub statistic: StatisticArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StudyArg {
    Null,
    Bernoulli,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NullArg {
    Uniform,
    Binomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PowerTestArg {
    Asymptotic,
    Permutation,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub study: StudyArg,

    #[arg(long, default_value_t = 100)]
    pub n: usize,

    #[arg(long, default_value_t = 500)]
    pub reps: usize,

    /// Null study: distribution of the independent pair.
    #[arg(long = "y", value_enum, default_value_t = NullArg::Uniform)]
    pub y_kind: NullArg,

    /// Bernoulli study: P(X = 1).
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,

    /// Bernoulli study: P(Z = 1), with Y = XZ.
    #[arg(long, default_value_t = 0.5)]
    pub pp: f64,

    /// Power study: linear, step, w_shape, sinusoid, circular or heteroskedastic.
    #[arg(long, default_value = "sinusoid")]
    pub scenario: String,

    /// Power study: comma-separated, strictly increasing noise levels in [0, 1].
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"
    )]
    pub lambda: Vec<f64>,

    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,

    #[arg(long, value_enum, default_value_t = PowerTestArg::Asymptotic)]
    pub test: PowerTestArg,

    #[arg(long, alias = "n-permutations", default_value_t = 199)]
    pub n_perms: usize,

    /// Also write the histogram or power table as CSV.
    #[arg(long)]
    pub csv: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub n_grid: Vec<usize>,

    #[arg(long, default_value_t = 21)]
    pub reps: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub sweep_size: usize,

    #[arg(long, default_value_t = 200)]
    pub max_n: usize,

    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
