use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Thermal entanglement of two spin-1 sites with bilinear-biquadratic
/// anisotropic exchange in a uniform field.
///
/// Every value can also come from a TOML file given with --config; its keys are
/// the long flag names (`J`, `Delta`, `log-base`, `axis1`, ...). Flags win over
/// the file, the file wins over built-in defaults.
#[derive(Parser, Debug)]
#[command(name = "qutrit-thermal", version)]
pub struct Cli {
    /// TOML file with default values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate negativity and realignment at one parameter point.
    Point(PointArgs),
    /// Evaluate a one- or two-axis grid and write it as CSV.
    Sweep(SweepArgs),
    /// Compare the closed-form eigenpairs with direct diagonalization.
    Spectrum(SpectrumArgs),
    /// Bisect for the temperature at which entanglement disappears.
    Threshold(ThresholdArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    /// Bilinear exchange J [default: -1]
    #[arg(long = "J", value_name = "J", allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Biquadratic exchange K [default: 0]
    #[arg(long = "K", value_name = "K", allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// z-anisotropy Δ [default: -1]
    #[arg(long = "Delta", value_name = "DELTA", allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Magnetic field B [default: 0]
    #[arg(long = "B", value_name = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CriterionArgs {
    /// Base of the logarithm in R: e, 2 or 10 [default: e]
    #[arg(long, value_name = "BASE")]
    pub log_base: Option<String>,
    /// Partial-transpose eigenvalues below minus this count as negative [default: 1e-12]
    #[arg(long, value_name = "EPS")]
    pub pt_threshold: Option<f64>,
    /// R above this counts as a realignment violation [default: 1e-12]
    #[arg(long, value_name = "EPS")]
    pub r_threshold: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Temperature, k_B = 1 [default: 0.2]
    #[arg(long = "T", value_name = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[command(flatten)]
    pub criteria: CriterionArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SweepArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Outer axis as name:min:max:steps, name one of J, K, Delta, B, T [default: B:-3:3:61]
    #[arg(long, value_name = "AXIS", allow_hyphen_values = true)]
    pub axis1: Option<String>,
    /// Inner axis, or `none` for a one-axis sweep [default: Delta:-3:3:61]
    #[arg(long, value_name = "AXIS", allow_hyphen_values = true)]
    pub axis2: Option<String>,
    /// Comma-separated detectors: negativity, realignment [default: both]
    #[arg(long, value_name = "LIST")]
    pub detectors: Option<String>,
    /// CSV destination [default: sweep.csv]
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores
    #[arg(long, value_name = "N")]
    pub parallelism: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Closed-form family: 1 (K = 0 only), 2, or auto [default: auto]
    #[arg(long, value_name = "CASE")]
    pub case: Option<String>,
    /// Recorded in the output metadata only; the spectrum does not depend on it
    #[arg(long, value_name = "BASE")]
    pub log_base: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Lower end of the temperature bracket [default: 0.05]
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper end of the temperature bracket [default: 3]
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// negativity, realignment or both [default: negativity]
    #[arg(long, value_name = "NAME")]
    pub detector: Option<String>,
    /// Bisection stops once the bracket is this narrow [default: 1e-4]
    #[arg(long, value_name = "DT")]
    pub tolerance: Option<f64>,
    /// Detector values above this count as entangled [default: 1e-9]
    #[arg(long, value_name = "EPS")]
    pub detection_level: Option<f64>,
    /// Also report the largest threshold over the --scan-axis1 × --scan-axis2 grid
    #[arg(long)]
    pub scan: bool,
    /// First scan axis [default: B:-3:3:61]
    #[arg(long, value_name = "AXIS", allow_hyphen_values = true)]
    pub scan_axis1: Option<String>,
    /// Second scan axis [default: Delta:-3:3:61]
    #[arg(long, value_name = "AXIS", allow_hyphen_values = true)]
    pub scan_axis2: Option<String>,
    /// Base of the logarithm in R: e, 2 or 10 [default: e]
    #[arg(long, value_name = "BASE")]
    pub log_base: Option<String>,
}
