use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unidp::harness::EstimatorKind;
use unidp::oracles::DistributionSpec;
use unidp::statistical::{IqrBoundReturn, Settings, VarianceBudget};

use crate::input::parse_number;

#[derive(Debug, Parser)]
#[command(name = "unidp", version, about = "Differentially private mean, variance and IQR estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a parameter from one real value per line.
    Estimate(EstimateArgs),
    /// Run seeded Monte-Carlo trials against a known distribution.
    Experiment(ExperimentArgs),
    /// Print population quantities of a distribution as JSON.
    Oracle(OracleArgs),
    /// Draw a seeded sample, one value per line.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg7Variant {
    /// Return 2^-j on the low side.
    PaperCode,
    /// Return 2^(1-j) on the low side.
    PaperProof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BudgetMode {
    /// Laplace scale 8r/(εn); spends 9ε/8 in total.
    Paper,
    /// Laplace scale sized so the total stays within ε.
    Conservative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Privacy and mechanism options shared by `estimate` and `experiment`.
#[derive(Debug, Args)]
pub struct MechanismArgs {
    #[arg(long, value_parser = positive)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1, value_parser = parse_number)]
    pub beta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Replace every noise draw by zero (debugging only; not private).
    #[arg(long)]
    pub noiseless: bool,
    #[arg(long, value_enum, default_value_t = Alg7Variant::PaperCode)]
    pub alg7_variant: Alg7Variant,
    #[arg(long, value_enum, default_value_t = BudgetMode::Paper)]
    pub variance_budget: BudgetMode,
    /// Bucket size for radius, range and quantile.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub bucket: f64,
    /// Rank for the quantile estimator (default: floor(n/2)).
    #[arg(long)]
    pub tau: Option<usize>,
}

impl MechanismArgs {
    pub fn settings(&self) -> Settings {
        Settings {
            iqr_return: match self.alg7_variant {
                Alg7Variant::PaperCode => IqrBoundReturn::Pseudocode,
                Alg7Variant::PaperProof => IqrBoundReturn::Proof,
            },
            variance_budget: match self.variance_budget {
                BudgetMode::Paper => VarianceBudget::Naive,
                BudgetMode::Conservative => VarianceBudget::Conservative,
            },
            ..Settings::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Input file; reads stdin when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub estimator: EstimatorKind,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub dist: DistributionSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub estimator: EstimatorKind,
    #[command(flatten)]
    pub mechanism: MechanismArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Constant of the soft sample-size conditions.
    #[arg(long = "const-c1", default_value_t = unidp::harness::guarantees::DEFAULT_C1, value_parser = positive)]
    pub c1: f64,
    /// Constant in the guarantee predicates.
    #[arg(long = "const-c", default_value_t = unidp::harness::guarantees::DEFAULT_C, value_parser = positive)]
    pub c: f64,
    /// Write the rows here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the aggregate as JSON to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub dist: DistributionSpec,
    /// Absolute central moment orders.
    #[arg(long = "moment", value_parser = parse_number)]
    pub moments: Vec<f64>,
    /// Levels for phi, e.g. 1/16.
    #[arg(long = "phi", value_parser = parse_number)]
    pub phi_levels: Vec<f64>,
    /// Interval widths for theta.
    #[arg(long = "theta", value_parser = parse_number)]
    pub theta_kappas: Vec<f64>,
    /// Distances from the mean for the tail expectations.
    #[arg(long = "tail", value_parser = parse_number)]
    pub tail_xis: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub dist: DistributionSpec,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn positive(s: &str) -> Result<f64, String> {
    let x = parse_number(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}
