use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "commspec", version, about = "Galerkin experiments for harmonic-projection commutators on weighted Bergman spaces")]
pub struct Cli {
    /// Cap on worker threads for assembly and SVD (0 = all cores).
    #[arg(long, global = true, env = "COMMSPEC_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Write the artifact to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seeded invariant suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Tables of the coefficient sequences b, c, t, x.
    Families(FamiliesArgs),
    /// Dump an assembled Galerkin matrix.
    Assemble(OperatorArgs),
    /// Singular values of an assembled operator or a dumped matrix.
    Spectrum(SpectrumArgs),
    /// Fit s_n ~ C/n^p + D/n^(p+1) to a CSV spectrum.
    Fit(FitArgs),
    /// Convergence study of n s_n for the commutator against the predicted constant.
    Theorem(TheoremArgs),
    /// Compare sector compressions of an operator with the operator itself.
    Sectors(SectorsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Seq {
    B,
    C,
    T,
    X,
}

#[derive(Debug, Clone, Args)]
pub struct FamiliesArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10)]
    pub count: u32,
    #[arg(long, value_enum)]
    pub seq: Seq,
    /// Complex coefficient a (used by t).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Log mass nu (used by t and x).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpName {
    E,
    Estar,
    Q0,
    Q0star,
    Frakq,
    Rnu,
    Y,
    L,
    S,
    Lconj,
    Sconj,
    Commutator,
    Projection,
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, short = 'd', default_value_t = 24)]
    pub degree: u32,
    #[arg(long, default_value_t = 8)]
    pub r0: u32,
    #[arg(long, value_enum, default_value_t = OpName::Commutator)]
    pub op: OpName,
    /// Symbol for l, s, lconj, sconj and commutator.
    #[arg(long, default_value = "nu=1;U=1")]
    pub symbol: String,
    /// Complex coefficient for frakq and y.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Log mass for rnu and y.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nu: f64,
    /// Compress to sector j of N, written j/N.
    #[arg(long)]
    pub sector: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub operator: OperatorArgs,
    /// Read a matrix written by `assemble` instead of assembling.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV spectrum as written by `spectrum`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// Index window n1,n2 (default: the middle half of the spectrum).
    #[arg(long)]
    pub window: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct TheoremArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value = "nu=1;U=1")]
    pub symbol: String,
    #[arg(long, default_value = "48,96,192")]
    pub degrees: String,
    /// One or more radial cutoffs; the largest drives the extrapolation.
    #[arg(long, default_value = "8")]
    pub r0: String,
    /// Leave runtime out of the report so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, default_value_t = 512)]
    pub quad_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SectorsArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, short = 'd', default_value_t = 64)]
    pub degree: u32,
    #[arg(long, default_value_t = 8)]
    pub r0: u32,
    #[arg(long, value_enum, default_value_t = OpName::Y)]
    pub op: OpName,
    #[arg(long, default_value = "nu=1;U=1")]
    pub symbol: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nu: f64,
    /// Number of angular sectors N.
    #[arg(long, short = 'n', default_value_t = 4)]
    pub sectors: u32,
}
