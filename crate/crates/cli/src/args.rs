use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

#[derive(Debug, Parser)]
#[command(
    name = "steinberg",
    version,
    about = "Multiplicity of the Steinberg module in L_k for SL2(F_q)",
    after_help = "Set STEINBERG_GUARD_OVERRIDE=1 to lift the oracle size guards (slow)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps over k; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Add per-method wall-clock columns (microseconds).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// d_{k,q} for a single k.
    Dim {
        #[arg(value_parser = parse_biguint)]
        k: BigUint,
        q: u64,
        /// Also run the linear-algebra oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// One record per k in 0..=kmax.
    Table {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check methods over 0..=kmax; exit status 2 on any mismatch.
    Verify {
        #[command(flatten)]
        sweep: Sweep,
        /// Comma-separated subset of general, closed, oracle, inner-product.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "general,closed,oracle")]
        methods: Vec<MethodArg>,
    },
    /// Brauer characters of Delta_1 .. Delta_{q-1} and st on the regular classes.
    CharTable {
        #[arg(long)]
        q: u64,
    },
    /// Convergence of d/dim L_k against the contraction envelope.
    Asymptotics {
        #[arg(long)]
        q: u64,
        /// `mass:M1,M2,..` (k with M nonzero digits) or `k:K1,K2,..`.
        #[arg(long, default_value = "mass:5,10,20,40,80")]
        schedule: String,
    },
    /// Brute-force conjugacy class audit.
    Classes {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Debug, Args)]
pub struct Sweep {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub kmax: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    General,
    Closed,
    Oracle,
    InnerProduct,
}

fn parse_biguint(s: &str) -> Result<BigUint, String> {
    s.parse::<BigUint>()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}
