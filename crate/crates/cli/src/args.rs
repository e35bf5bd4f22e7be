use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cbpower",
    version,
    about = "Voting power under common-belief voting measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Exact fractions or half-to-even rounded decimals.
    #[arg(long, value_enum, default_value_t = NumericMode::Rational, global = true)]
    pub numeric: NumericMode,

    /// Digits after the decimal point in decimal mode.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=50), global = true)]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NumericMode {
    Rational,
    Decimal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact decisiveness, success and efficiency for every voter.
    Analyze(AnalyzeArgs),
    /// Cross-check the engine against brute-force enumeration.
    Validate(ValidateArgs),
    /// Tabulate a quantity over growing N next to its limit and bound.
    Converge(ConvergeArgs),
    /// Monte Carlo estimates with standard errors.
    Sample(SampleArgs),
    /// Recover weights and quota for a permutation-invariant family.
    InvariantCheck(InvariantCheckArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Weighted system or explicit winning family (JSON).
    #[arg(long)]
    pub system: PathBuf,
    /// penrose-banzhaf | shapley-shubik | unanimity, or a measure file.
    #[arg(long)]
    pub measure: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Measure to validate under; defaults to the three standard measures.
    #[arg(long)]
    pub measure: Option<String>,
    /// Largest N for which brute-force enumeration runs.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=20))]
    pub n_max: u32,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("family").required(true).args(["simple", "majority"]))]
pub struct ConvergeArgs {
    /// DPlus, DMinus, D, SPlus, SMinus, S or E.
    #[arg(long)]
    pub quantity: String,
    #[arg(long)]
    pub measure: String,
    /// Unit weights with a fixed relative quota.
    #[arg(long, requires = "relative_quota")]
    pub simple: bool,
    /// Unit weights, more than half the voters needed.
    #[arg(long, conflicts_with = "relative_quota")]
    pub majority: bool,
    #[arg(long)]
    pub relative_quota: Option<String>,
    /// `start:end[:step]` (inclusive) or a comma-separated list.
    #[arg(long = "n")]
    pub voters: String,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub measure: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated quantities; all by default.
    #[arg(long)]
    pub quantity: Option<String>,
    /// Accept measures that are not symmetric under p ↦ 1-p.
    #[arg(long)]
    pub allow_asymmetric: bool,
}

#[derive(Debug, Args)]
pub struct InvariantCheckArgs {
    /// Explicit winning family (JSON, 1-based voter labels).
    #[arg(long)]
    pub family: PathBuf,
}
