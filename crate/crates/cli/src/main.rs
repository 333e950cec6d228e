mod args;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::error::ErrorKind;
use clap::Parser;
use cliquerelax_core::generators::{GeneratorOutput, GeneratorSpec, PlantSpec};
use cliquerelax_core::io::{
    read_edge_list, read_partition, write_communities, write_graph, write_partition, LabelMap, OutputFormat,
};
use cliquerelax_core::quasi::{summarize_cover, sweep};
use cliquerelax_core::{
    cover_to_partition, enumerate_maximal_cliques, enumerate_maximal_quasi_cliques, modularity, with_threads,
    AssignmentPolicy, Fraction, Graph, Partition, QuasiCliqueParams,
};
use serde_json::{json, Value};

use args::{Cli, CliquesArgs, Command, CompareArgs, GenerateArgs, Model, ModularityArgs, QuasicliquesArgs, SweepArgs};

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<cliquerelax_core::Error> for Failure {
    fn from(e: cliquerelax_core::Error) -> Self {
        Failure::Data(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Cliques(a) => cliques(a, &mut out)?,
        Command::Quasicliques(a) => quasicliques(a, &mut out)?,
        Command::Modularity(a) => modularity_report(a, &mut out)?,
        Command::Generate(a) => generate(a, &mut out)?,
        Command::Sweep(a) => sweep_grid(a, &mut out)?,
        Command::Compare(a) => compare(a, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn load_graph(path: &Path) -> anyhow::Result<(Graph, LabelMap)> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn load_partition(path: &Path, labels: &LabelMap) -> anyhow::Result<Partition> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_partition(BufReader::new(file), labels).with_context(|| format!("reading {}", path.display()))
}

fn write_json(out: &mut impl Write, value: &Value) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn path_value(path: &Path) -> Value {
    Value::String(path.display().to_string())
}

fn cliques(a: CliquesArgs, out: &mut impl Write) -> Outcome {
    let (g, labels) = load_graph(&a.input)?;
    let found = with_threads(a.threads, || enumerate_maximal_cliques(&g, a.min_size))?;
    let params = json!({
        "command": "cliques",
        "input": path_value(&a.input),
        "min_size": a.min_size,
    });
    write_communities(out, &g, &found, &labels, a.format, &params)?;
    Ok(())
}

fn quasi_params(
    lambda: Fraction,
    gamma: Fraction,
    min_size: usize,
    connected: bool,
) -> Result<QuasiCliqueParams, Failure> {
    QuasiCliqueParams::new(lambda, gamma)
        .and_then(|p| p.with_min_size(min_size))
        .map(|p| p.with_connectivity(connected))
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn quasicliques(a: QuasicliquesArgs, out: &mut impl Write) -> Outcome {
    let params = quasi_params(a.lambda, a.gamma, a.min_size, a.require_connected)?;
    let (g, labels) = load_graph(&a.input)?;
    let found = with_threads(a.threads, || enumerate_maximal_quasi_cliques(&g, &params))??;
    let echo = json!({
        "command": "quasicliques",
        "input": path_value(&a.input),
        "lambda": params.lambda,
        "gamma": params.gamma,
        "min_size": params.min_size,
        "require_connected": params.require_connected,
    });
    write_communities(out, &g, &found, &labels, a.format, &echo)?;
    Ok(())
}

fn modularity_report(a: ModularityArgs, out: &mut impl Write) -> Outcome {
    let (g, labels) = load_graph(&a.input)?;
    let partition = load_partition(&a.partition, &labels)?;
    let report = modularity(&g, &partition)?;
    write_json(
        out,
        &json!({
            "command": "modularity",
            "params": { "input": path_value(&a.input), "partition": path_value(&a.partition) },
            "vertex_count": g.vertex_count(),
            "edge_count": g.edge_count(),
            "block_count": partition.block_count(),
            "report": report,
        }),
    )?;
    Ok(())
}

fn required<T>(value: Option<T>, flag: &str, model: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--model {model} requires --{flag}")))
}

fn parse_plant(text: &str) -> Result<PlantSpec, Failure> {
    let bad = || Failure::Usage(format!("--plant expects SIZE:LAMBDA:GAMMA, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [size, lambda, gamma] = parts[..] else {
        return Err(bad());
    };
    Ok(PlantSpec {
        size: size.parse().map_err(|_| bad())?,
        lambda: lambda.parse().map_err(|_| bad())?,
        gamma: gamma.parse().map_err(|_| bad())?,
    })
}

fn generator_spec(a: &GenerateArgs) -> Result<GeneratorSpec, Failure> {
    Ok(match a.model {
        Model::Gnp => GeneratorSpec::Gnp { n: required(a.n, "n", "gnp")?, p: required(a.p, "p", "gnp")?, seed: a.seed },
        Model::Config => GeneratorSpec::Config {
            degrees: required(a.degrees.clone(), "degrees", "config")?,
            seed: a.seed,
            max_retries: a.max_retries,
        },
        Model::Ring => GeneratorSpec::Ring {
            cliques: required(a.cliques, "cliques", "ring")?,
            size: required(a.size, "size", "ring")?,
        },
        Model::Planted => {
            if a.plants.is_empty() {
                return Err(Failure::Usage("--model planted requires at least one --plant".into()));
            }
            GeneratorSpec::Planted {
                n: required(a.n, "n", "planted")?,
                background_p: required(a.background_p, "background-p", "planted")?,
                plants: a.plants.iter().map(|p| parse_plant(p)).collect::<Result<_, _>>()?,
                seed: a.seed,
            }
        }
    })
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn generate(a: GenerateArgs, out: &mut impl Write) -> Outcome {
    let spec = generator_spec(&a)?;
    let GeneratorOutput { graph, ground_truth, natural_partition, spec_echo } =
        spec.generate().map_err(|e| match e {
            // these come straight from the flags
            cliquerelax_core::Error::InvalidGenerator(_)
            | cliquerelax_core::Error::OddDegreeSum { .. }
            | cliquerelax_core::Error::NotGraphical => Failure::Usage(e.to_string()),
            other => other.into(),
        })?;
    let labels = LabelMap::identity(graph.vertex_count());
    let echo = serde_json::to_value(&spec_echo).map_err(anyhow::Error::from)?;
    match &a.out {
        Some(path) => {
            let mut file = create(path)?;
            write_graph(&mut file, &graph, &labels, Some(&echo))?;
            file.flush()?;
        }
        None => write_graph(out, &graph, &labels, Some(&echo))?,
    }
    if let Some(path) = &a.partition_out {
        let partition = natural_partition.ok_or_else(|| anyhow!("model {:?} has no natural partition", a.model))?;
        let mut file = create(path)?;
        write_partition(&mut file, &partition, &labels)?;
        file.flush()?;
    }
    if let Some(path) = &a.truth_out {
        let truth = ground_truth.ok_or_else(|| anyhow!("model {:?} has no planted communities", a.model))?;
        let mut file = create(path)?;
        write_communities(&mut file, &graph, &truth, &labels, OutputFormat::Tsv, &Value::Null)?;
        file.flush()?;
    }
    Ok(())
}

fn sweep_grid(a: SweepArgs, out: &mut impl Write) -> Outcome {
    let (g, _) = load_graph(&a.input)?;
    let grid = with_threads(1, || sweep(&g, &a.lambdas, &a.gammas, a.min_size))??;
    write_json(
        out,
        &json!({
            "command": "sweep",
            "params": {
                "input": path_value(&a.input),
                "lambdas": a.lambdas,
                "gammas": a.gammas,
                "min_size": a.min_size,
            },
            "vertex_count": g.vertex_count(),
            "edge_count": g.edge_count(),
            "grid": grid,
        }),
    )?;
    Ok(())
}

fn compare(a: CompareArgs, out: &mut impl Write) -> Outcome {
    let params = quasi_params(a.lambda, a.gamma, QuasiCliqueParams::DEFAULT_MIN_SIZE, false)?;
    let (g, labels) = load_graph(&a.input)?;
    let supplied = a.partition.as_deref().map(|p| load_partition(p, &labels)).transpose()?;
    let cover = with_threads(1, || enumerate_maximal_quasi_cliques(&g, &params))??;
    let induced = cover_to_partition(&g, &cover, AssignmentPolicy::MostInternalNeighbors)?;
    let induced_report = modularity(&g, &induced)?;
    let supplied_json = match &supplied {
        Some(p) => json!({ "block_count": p.block_count(), "modularity": modularity(&g, p)? }),
        None => Value::Null,
    };
    write_json(
        out,
        &json!({
            "command": "compare",
            "params": {
                "input": path_value(&a.input),
                "lambda": params.lambda,
                "gamma": params.gamma,
                "min_size": params.min_size,
                "require_connected": params.require_connected,
                "partition": a.partition.as_deref().map(path_value),
                "assignment": "most_internal_neighbors",
            },
            "vertex_count": g.vertex_count(),
            "edge_count": g.edge_count(),
            "quasi_cliques": summarize_cover(&g, &cover),
            "induced_partition": { "block_count": induced.block_count(), "modularity": induced_report },
            "supplied_partition": supplied_json,
        }),
    )?;
    Ok(())
}
