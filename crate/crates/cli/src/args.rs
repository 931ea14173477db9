use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use feelab::{Fee, SplitMode};

#[derive(Debug, Parser)]
#[command(
    name = "feelab",
    version,
    about = "Fee-rule experiments on constant-product pools"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to the defaults.
#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    /// Initial reserve of token A [default: 100]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    /// Initial reserve of token B [default: 100]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub y0: Option<f64>,
    /// Trade size in token A [default: 10]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dx: Option<f64>,
    /// Fee rule: constant:PHI, linear:SLOPE:KREF, zeroil:K0 or priceratio:BASE [default: constant:0.003]
    #[arg(long, global = true, value_parser = parse_fee)]
    pub fee: Option<Fee>,
    /// Swap engine [default: auto]
    #[arg(long, global = true, value_enum)]
    pub engine: Option<EngineChoice>,
    /// Fee split of the discrete engine [default: balanced]
    #[arg(long, global = true, value_parser = parse_split)]
    pub split: Option<SplitMode>,
    /// Output format; FEELAB_FORMAT sets the default [default: table]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the series to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with default values for any of the flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute one trade and report the outcome and impermanent loss
    Swap {
        /// Number of equal sub-trades [default: 1]
        #[arg(long)]
        splits: Option<usize>,
    },
    /// Relative invariant error of split trades against the atomic trade
    SplitTest {
        /// Split counts [default: 1,2,5,10,20,50,100,200,500,1000]
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
    },
    /// Relative effective price over relative trade sizes
    PriceCurve(AlphaGrid),
    /// Impermanent loss over relative trade sizes
    IlCurve(AlphaGrid),
    /// Combined fee factor sampled over the reserve plane
    FeeField {
        /// Range of x as LO:HI [default: 50:200]
        #[arg(long, value_parser = parse_range)]
        x_range: Option<(f64, f64)>,
        /// Range of y as LO:HI [default: 50:200]
        #[arg(long, value_parser = parse_range)]
        y_range: Option<(f64, f64)>,
        /// Grid points per axis [default: 61]
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Zero-IL fee factor over relative invariants t = k/k0
    ZeroilCurve {
        /// Reference invariant [default: x0·y0]
        #[arg(long, allow_negative_numbers = true)]
        k0: Option<f64>,
        /// Explicit t values; overrides --t-max and --points
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        /// Largest t of the uniform grid [default: 1.00001]
        #[arg(long)]
        t_max: Option<f64>,
        /// Number of grid points [default: 101]
        #[arg(long)]
        points: Option<usize>,
    },
    /// Required zero-IL fee factors at one invariant for several references
    NoUniversal {
        /// Target invariant k* [default: 10100]
        #[arg(long, allow_negative_numbers = true)]
        kstar: Option<f64>,
        /// Reference invariants below k* [default: 10000,9000]
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        k0: Option<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct AlphaGrid {
    /// Explicit relative trade sizes dx/x0; overrides --alpha-max and --points
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    /// Largest relative trade size of the uniform grid [default: 0.5]
    #[arg(long)]
    pub alpha_max: Option<f64>,
    /// Number of grid points [default: 50]
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    /// Continuous for path-independent rules, discrete otherwise
    Auto,
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Table,
}

fn parse_fee(s: &str) -> Result<Fee, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_split(s: &str) -> Result<SplitMode, String> {
    s.parse()
        .map_err(|_| "expected balanced, input-only or output-only".to_string())
}

pub(crate) fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let number = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{v}` is not a number"))
    };
    Ok((number(lo)?, number(hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("50:200"), Ok((50.0, 200.0)));
        assert!(parse_range("50").is_err());
        assert!(parse_range("a:1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
