//! Command-line front end: property reports, spectra export, single-pair
//! distances, and the full pruning experiment.
//!
//! All numeric output comes straight from the library; the CLI only formats.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use netdist::config::{fraction_grid, ExperimentConfig};
use netdist::harness::{self, MetricKind};
use netdist::io::{self, GraphFormat};
use netdist_core::numfmt::{format_significant, format_significant_trimmed};
use netdist_core::{
    deltacon_similarity, edit_distance, root_euclidean_distance, shortest_path_matrix_distance,
    spectral_distance, Graph, GraphProperties, MatrixKind, PruneMode, Spectrum,
};

#[derive(Parser)]
#[command(
    name = "netdist",
    about = "Structural statistics, spectra, and graph distances for pruned-network analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputOptions {
    /// Input format: edgelist, matrix, or twomode
    #[arg(long, default_value = "edgelist")]
    format: GraphFormat,
    /// Field delimiter for edge lists
    #[arg(long, default_value = ",")]
    delimiter: char,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural property report of a graph
    Stats {
        graph: PathBuf,
        #[command(flatten)]
        input: InputOptions,
        /// Emit the report as a JSON object
        #[arg(long)]
        json: bool,
    },
    /// Print the spectrum of a representation matrix, one eigenvalue per line
    Spectrum {
        graph: PathBuf,
        /// Representation matrix: A, L, or NL
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        input: InputOptions,
    },
    /// Print the distance between two graphs under the chosen metric
    Distance {
        graph1: PathBuf,
        graph2: PathBuf,
        /// One of: dA, dL, dNL, dRootED, simDC, edit, spd
        #[arg(long)]
        metric: String,
        /// Compare only the k most significant eigenvalues (spectral metrics)
        #[arg(long)]
        k: Option<usize>,
        /// Finite substitute for unreachable pairs (spd; default: node count)
        #[arg(long)]
        unreachable: Option<f64>,
        #[command(flatten)]
        input: InputOptions,
    },
    /// Run the pruning experiment described by a config file
    PruneExperiment {
        /// Config file (or use --config)
        config_path: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the pruning mode: edges or nodes
        #[arg(long)]
        mode: Option<PruneMode>,
        /// Override the number of replicates per fraction
        #[arg(long)]
        nrep: Option<u32>,
        /// Regenerate the fraction grid up to this maximum
        #[arg(long, value_name = "FRACTION")]
        torem_max: Option<f64>,
        /// Number of grid steps when regenerating the fraction grid
        #[arg(long)]
        steps: Option<u32>,
        /// Override the base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the metric list (comma separated)
        #[arg(long)]
        metrics: Option<String>,
        /// Override the output CSV path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON mirror of the records
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Stats { graph, input, json } => {
            let g = load(&graph, &input)?;
            let props = g.properties().map_err(|e| e.to_string())?;
            if json {
                println!("{}", props_json(&props));
            } else {
                print!("{}", props_text(&props));
            }
            Ok(())
        }
        Command::Spectrum { graph, matrix, input } => {
            let kind = parse_matrix_kind(&matrix)?;
            let g = load(&graph, &input)?;
            let spectrum = Spectrum::compute(&g, kind).map_err(|e| e.to_string())?;
            for v in spectrum.values() {
                println!("{}", format_significant_trimmed(*v, 12));
            }
            Ok(())
        }
        Command::Distance {
            graph1,
            graph2,
            metric,
            k,
            unreachable,
            input,
        } => {
            let g1 = load(&graph1, &input)?;
            let g2 = load(&graph2, &input)?;
            let value = evaluate_metric(&g1, &g2, &metric, k, unreachable)?;
            println!("{}", format_significant(value, 6));
            Ok(())
        }
        Command::PruneExperiment {
            config_path,
            config,
            mode,
            nrep,
            torem_max,
            steps,
            seed,
            metrics,
            out,
            json_out,
        } => {
            let path = config_path
                .or(config)
                .ok_or("a config file is required (positional or --config)")?;
            let mut cfg = ExperimentConfig::from_file(&path).map_err(|e| e.to_string())?;
            apply_overrides(&mut cfg, mode, nrep, torem_max, steps, seed, metrics, out, json_out)?;
            cfg.validate().map_err(|e| e.to_string())?;

            let outcome = harness::run_experiment(&cfg).map_err(|e| e.to_string())?;
            harness::write_records_csv(&outcome.records, &cfg.output).map_err(|e| e.to_string())?;
            if let Some(json_path) = &cfg.json_output {
                harness::write_records_json(&outcome.records, json_path)
                    .map_err(|e| e.to_string())?;
            }
            for s in &outcome.summaries {
                println!("{}: {} records, {:.2}s", s.name, s.records, s.seconds);
            }
            Ok(())
        }
    }
}

fn load(path: &Path, input: &InputOptions) -> Result<Graph, String> {
    let loaded = io::load_graph(path, input.format, input.delimiter).map_err(|e| e.to_string())?;
    if loaded.duplicate_rows > 0 {
        eprintln!(
            "warning: {} duplicate edge row(s) collapsed in `{}`",
            loaded.duplicate_rows,
            path.display()
        );
    }
    Ok(loaded.graph)
}

fn parse_matrix_kind(flag: &str) -> Result<MatrixKind, String> {
    match flag {
        "A" => Ok(MatrixKind::Adjacency),
        "L" => Ok(MatrixKind::Laplacian),
        "NL" => Ok(MatrixKind::NormalizedLaplacian),
        other => Err(format!("unknown matrix flag `{other}` (expected A, L, or NL)")),
    }
}

fn evaluate_metric(
    g1: &Graph,
    g2: &Graph,
    metric: &str,
    k: Option<usize>,
    unreachable: Option<f64>,
) -> Result<f64, String> {
    let spectral = |kind| spectral_distance(g1, g2, kind, k).map_err(|e| e.to_string());
    match metric {
        "dA" => spectral(MatrixKind::Adjacency),
        "dL" => spectral(MatrixKind::Laplacian),
        "dNL" => spectral(MatrixKind::NormalizedLaplacian),
        "dRootED" => root_euclidean_distance(g1, g2).map_err(|e| e.to_string()),
        "simDC" => deltacon_similarity(g1, g2).map_err(|e| e.to_string()),
        "edit" => edit_distance(g1, g2).map_err(|e| e.to_string()),
        "spd" => shortest_path_matrix_distance(g1, g2, unreachable).map_err(|e| e.to_string()),
        other => Err(format!(
            "unknown metric `{other}` (expected dA, dL, dNL, dRootED, simDC, edit, or spd)"
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn apply_overrides(
    cfg: &mut ExperimentConfig,
    mode: Option<PruneMode>,
    nrep: Option<u32>,
    torem_max: Option<f64>,
    steps: Option<u32>,
    seed: Option<u64>,
    metrics: Option<String>,
    out: Option<PathBuf>,
    json_out: Option<PathBuf>,
) -> Result<(), String> {
    if let Some(mode) = mode {
        cfg.mode = mode;
    }
    if let Some(nrep) = nrep {
        cfg.nrep = nrep;
    }
    if torem_max.is_some() || steps.is_some() {
        let max = torem_max.unwrap_or(0.10);
        let steps = steps.unwrap_or(10);
        if steps == 0 {
            return Err("field `steps`: must be at least 1".to_string());
        }
        cfg.fractions = fraction_grid(max, steps);
    }
    if let Some(seed) = seed {
        cfg.base_seed = seed;
    }
    if let Some(list) = metrics {
        cfg.metrics = list
            .split(',')
            .map(|t| t.trim().parse::<MetricKind>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("field `metrics`: {e}"))?;
    }
    if let Some(out) = out {
        cfg.output = out;
    }
    if let Some(json_out) = json_out {
        cfg.json_output = Some(json_out);
    }
    Ok(())
}

/// `key=value` report, reals with 3 decimals to match the reference tables.
fn props_text(p: &GraphProperties) -> String {
    format!(
        "n={}\nn_isolated={}\nm={}\nn_components={}\nmax_avg_path_length={:.3}\nmax_shortest_path={}\ndensity={:.3}\navg_degree={:.3}\nmax_degree={}\navg_clustering={:.3}\n",
        p.n,
        p.n_isolated,
        p.m,
        p.n_components,
        p.max_avg_path_length,
        p.max_shortest_path,
        p.density,
        p.avg_degree,
        p.max_degree,
        p.avg_clustering
    )
}

/// JSON report carrying exactly the values the text report shows.
fn props_json(p: &GraphProperties) -> String {
    let rounded = |v: f64| -> f64 { format!("{v:.3}").parse().expect("rounded float") };
    serde_json::to_string_pretty(&serde_json::json!({
        "n": p.n,
        "n_isolated": p.n_isolated,
        "m": p.m,
        "n_components": p.n_components,
        "max_avg_path_length": rounded(p.max_avg_path_length),
        "max_shortest_path": p.max_shortest_path,
        "density": rounded(p.density),
        "avg_degree": rounded(p.avg_degree),
        "max_degree": p.max_degree,
        "avg_clustering": rounded(p.avg_clustering),
    }))
    .expect("report serializes")
}
