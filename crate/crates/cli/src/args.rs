use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliquerelax_core::io::OutputFormat;
use cliquerelax_core::Fraction;

#[derive(Debug, Parser)]
#[command(name = "cliquerelax", version, about = "Clique and quasi-clique community detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate maximal cliques.
    Cliques(CliquesArgs),
    /// Enumerate locally maximal (lambda, gamma)-quasi-cliques.
    Quasicliques(QuasicliquesArgs),
    /// Score a partition by modularity.
    Modularity(ModularityArgs),
    /// Write a seeded synthetic graph.
    Generate(GenerateArgs),
    /// Summarize quasi-clique covers over a grid of parameters.
    Sweep(SweepArgs),
    /// Report a quasi-clique cover next to modularity scores.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct CliquesArgs {
    /// Edge list to read.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub min_size: usize,
    /// Worker threads; 0 picks one per core. Never changes the output.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// tsv or structured
    #[arg(long, default_value = "tsv", value_parser = parse_format)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct QuasicliquesArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Minimum internal degree fraction, in (0, 1].
    #[arg(long, value_parser = parse_unit_fraction)]
    pub lambda: Fraction,
    /// Minimum edge density, in (0, 1].
    #[arg(long, value_parser = parse_unit_fraction)]
    pub gamma: Fraction,
    #[arg(long, default_value_t = 3)]
    pub min_size: usize,
    /// Only report sets inducing a connected subgraph.
    #[arg(long)]
    pub require_connected: bool,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value = "tsv", value_parser = parse_format)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ModularityArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// One `label<TAB>block` line per vertex.
    #[arg(long)]
    pub partition: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Gnp,
    Config,
    Ring,
    Planted,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Destination edge list; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Vertex count (gnp, planted).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability (gnp).
    #[arg(long)]
    pub p: Option<f64>,
    /// Comma-separated degree sequence (config).
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
    /// Stub-matching attempts before giving up (config).
    #[arg(long, default_value_t = 100)]
    pub max_retries: u32,
    /// Number of cliques in the ring (ring).
    #[arg(long)]
    pub cliques: Option<usize>,
    /// Clique size (ring).
    #[arg(long)]
    pub size: Option<usize>,
    /// Background edge probability (planted).
    #[arg(long)]
    pub background_p: Option<f64>,
    /// Planted set as SIZE:LAMBDA:GAMMA, repeatable (planted).
    #[arg(long = "plant")]
    pub plants: Vec<String>,
    /// Also write the natural partition, when the model has one.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
    /// Also write the planted communities as tsv, when the model has them.
    #[arg(long)]
    pub truth_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated lambda values.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_unit_fraction)]
    pub lambdas: Vec<Fraction>,
    /// Comma-separated gamma values.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_unit_fraction)]
    pub gammas: Vec<Fraction>,
    #[arg(long, default_value_t = 3)]
    pub min_size: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_unit_fraction)]
    pub lambda: Fraction,
    #[arg(long, value_parser = parse_unit_fraction)]
    pub gamma: Fraction,
    /// Optional partition to score alongside the cover.
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

fn parse_unit_fraction(s: &str) -> Result<Fraction, String> {
    let f: Fraction = s.parse().map_err(|e: cliquerelax_core::Error| e.to_string())?;
    if f.in_unit_interval() {
        Ok(f)
    } else {
        Err(format!("{s} is outside (0, 1]"))
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: cliquerelax_core::Error| e.to_string())
}
