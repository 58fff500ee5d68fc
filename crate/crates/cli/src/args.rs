use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "logmono",
    version,
    about = "Exact log-monotonicity and Laguerre certificates for P-recursive sequences"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Last index checked by exact scans.
    #[arg(long, global = true, value_name = "H")]
    pub horizon: Option<i64>,
    /// Write `n,u_n,g(n),f(n)` rows as decimals to this CSV file.
    #[arg(long = "plot-data", global = true, value_name = "PATH")]
    pub plot_data: Option<PathBuf>,
    /// Seed for randomized checks (selftest).
    #[arg(long, global = true, value_name = "INT")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print exact terms a_n, b_n and u_n.
    Eval {
        file: PathBuf,
        #[arg(long)]
        from: Option<i64>,
        #[arg(long)]
        to: Option<i64>,
    },
    /// Exact violation scan.
    Scan {
        file: PathBuf,
        /// `logmono3` or `laguerre:<m>`.
        #[arg(long)]
        check: String,
        #[arg(long)]
        from: Option<i64>,
        #[arg(long)]
        to: Option<i64>,
    },
    /// Asymptotic verdicts for an expansion of u_n.
    Classify {
        /// For example `1 - (2)/n^2 + O(n^-4)`; `L` stands for log n.
        #[arg(long, allow_hyphen_values = true)]
        expansion: String,
    },
    /// Certify rational bounds on b_n and derive bounds on u_n.
    Bounds {
        file: PathBuf,
        /// Truncation order K of the ratio expansion.
        #[arg(long, default_value_t = 5)]
        order: usize,
        /// Smallest base index N1 to try.
        #[arg(long, default_value_t = 0)]
        n1: i64,
    },
    /// Thresholds for 3-log-monotonicity.
    #[command(name = "certify-logmono3")]
    CertifyLogmono3(CertifyArgs),
    /// Thresholds for the order-2 Laguerre inequality.
    #[command(name = "certify-laguerre2")]
    CertifyLaguerre2(CertifyArgs),
    /// Run a pipeline on every `.rec` file in a directory.
    Batch {
        dir: PathBuf,
        /// `logmono3` or `laguerre2`.
        #[arg(long)]
        check: String,
        /// Report directory (default `<dir>/reports`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized consistency checks of the exact kernels.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    pub file: PathBuf,
    /// Supplied bounds `g,f,N1` on u_n, in the variable n.
    #[arg(long, allow_hyphen_values = true)]
    pub bounds: Option<String>,
    /// Truncation order K when certifying bounds.
    #[arg(long, default_value_t = 5)]
    pub order: usize,
    /// Smallest base index N1 to try when certifying bounds.
    #[arg(long, default_value_t = 0)]
    pub n1: i64,
}
