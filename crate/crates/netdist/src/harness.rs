//! The pruning experiment end to end: load each network, strip isolates and
//! binarize, precompute the original's spectra and affinity matrix once,
//! then prune `nrep` times per fraction and aggregate the distances to the
//! original into per-(network, fraction, metric) mean and sigma records.
//!
//! Replicates are independent and run in parallel; every replicate derives
//! its own seed from `(base_seed, network, fraction, replicate)`, so output
//! is byte-identical for any thread count.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use netdist_core::numfmt::format_significant;
use netdist_core::{
    fbp_matrix, prune, spectral_distance_between, AffinityError, AffinityMatrix, EigenError,
    MatrixKind, PruneError, PruneMode, PruneSpec, Spectrum,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::config::ExperimentConfig;
use crate::io::{load_graph, LoadError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error("network `{name}`: {source}")]
    Load {
        name: String,
        #[source]
        source: LoadError,
    },
    #[error("network `{name}`: pruning failed at fraction {fraction}, replicate {replicate}: {source}")]
    Prune {
        name: String,
        fraction: f64,
        replicate: u32,
        #[source]
        source: PruneError,
    },
    #[error("network `{name}`: metric {metric} failed at fraction {fraction}, replicate {replicate}: {source}")]
    Metric {
        name: String,
        metric: MetricKind,
        fraction: f64,
        replicate: u32,
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("cannot aggregate an empty sample list")]
    EmptySample,
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("records file line {line}: {reason}")]
    BadRecord { line: usize, reason: String },
}

/// The distance metrics the experiment can evaluate per replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MetricKind {
    AdjacencySpectral,
    LaplacianSpectral,
    NormalizedLaplacianSpectral,
    RootEuclidean,
    SimDeltaCon,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::AdjacencySpectral,
        MetricKind::LaplacianSpectral,
        MetricKind::NormalizedLaplacianSpectral,
        MetricKind::RootEuclidean,
        MetricKind::SimDeltaCon,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MetricKind::AdjacencySpectral => "dA",
            MetricKind::LaplacianSpectral => "dL",
            MetricKind::NormalizedLaplacianSpectral => "dNL",
            MetricKind::RootEuclidean => "dRootED",
            MetricKind::SimDeltaCon => "simDC",
        }
    }

    fn spectral_kind(self) -> Option<MatrixKind> {
        match self {
            MetricKind::AdjacencySpectral => Some(MatrixKind::Adjacency),
            MetricKind::LaplacianSpectral => Some(MatrixKind::Laplacian),
            MetricKind::NormalizedLaplacianSpectral => Some(MatrixKind::NormalizedLaplacian),
            _ => None,
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricKind::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| format!("unknown metric `{s}` (expected dA, dL, dNL, dRootED, or simDC)"))
    }
}

/// Aggregated result for one (network, mode, fraction, metric) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub network: String,
    pub mode: PruneMode,
    pub fraction: f64,
    pub metric: MetricKind,
    pub mean: f64,
    pub std: f64,
    pub nrep: u32,
    pub base_seed: u64,
}

/// Per-network wall-clock summary for the CLI report.
#[derive(Debug, Clone)]
pub struct NetworkSummary {
    pub name: String,
    pub records: usize,
    pub seconds: f64,
}

/// Records plus per-network summaries.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<ExperimentRecord>,
    pub summaries: Vec<NetworkSummary>,
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-replicate seed: SplitMix64 finalizer rounds fold in the base and
/// then each index in turn. Identical inputs give identical seeds on any
/// platform; distinct tuples collide only with hash-level probability.
pub fn derive_seed(base: u64, network_index: u64, fraction_index: u64, replicate_index: u64) -> u64 {
    let mut h = mix64(base ^ 0x9e37_79b9_7f4a_7c15);
    h = mix64(h ^ network_index);
    h = mix64(h ^ fraction_index);
    mix64(h ^ replicate_index)
}

/// Arithmetic mean and population standard deviation (divide by N).
pub fn aggregate(samples: &[f64]) -> Result<(f64, f64), HarnessError> {
    if samples.is_empty() {
        return Err(HarnessError::EmptySample);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// The original network's precomputed quantities, shared by all replicates.
struct Originals {
    spectra: Vec<(MatrixKind, Spectrum)>,
    affinity: Option<AffinityMatrix>,
}

fn precompute(
    g: &netdist_core::Graph,
    metrics: &[MetricKind],
    name: &str,
) -> Result<Originals, HarnessError> {
    let mut spectra = Vec::new();
    for metric in metrics {
        if let Some(kind) = metric.spectral_kind() {
            let s = Spectrum::compute(g, kind)
                .map_err(|e| metric_error(name, *metric, 0.0, 0, Box::new(e) as _))?;
            spectra.push((kind, s));
        }
    }
    let needs_affinity = metrics
        .iter()
        .any(|m| matches!(m, MetricKind::RootEuclidean | MetricKind::SimDeltaCon));
    let affinity = if needs_affinity {
        Some(fbp_matrix(g).map_err(|e| {
            metric_error(name, MetricKind::RootEuclidean, 0.0, 0, Box::new(e) as _)
        })?)
    } else {
        None
    };
    Ok(Originals { spectra, affinity })
}

fn metric_error(
    name: &str,
    metric: MetricKind,
    fraction: f64,
    replicate: u32,
    source: Box<dyn std::error::Error + Send + Sync>,
) -> HarnessError {
    HarnessError::Metric {
        name: name.to_string(),
        metric,
        fraction,
        replicate,
        source,
    }
}

/// Coordinates of one replicate inside the experiment.
struct ReplicateCtx<'a> {
    name: &'a str,
    mode: PruneMode,
    fraction: f64,
    seed: u64,
    replicate: u32,
}

/// One replicate: prune and evaluate every requested metric against the
/// precomputed originals. Returns values in `metrics` order.
fn replicate_metrics(
    g: &netdist_core::Graph,
    originals: &Originals,
    metrics: &[MetricKind],
    ctx: &ReplicateCtx<'_>,
) -> Result<Vec<f64>, HarnessError> {
    let prune_err = |source| HarnessError::Prune {
        name: ctx.name.to_string(),
        fraction: ctx.fraction,
        replicate: ctx.replicate,
        source,
    };
    let spec = PruneSpec::new(ctx.mode, ctx.fraction, ctx.seed).map_err(prune_err)?;
    let result = prune(g, &spec).map_err(prune_err)?;
    let pruned = &result.pruned;
    let fail = |metric, e| metric_error(ctx.name, metric, ctx.fraction, ctx.replicate, e);

    let mut root_ed: Option<f64> = None;
    let mut values = Vec::with_capacity(metrics.len());
    for &metric in metrics {
        let v = match metric {
            MetricKind::AdjacencySpectral
            | MetricKind::LaplacianSpectral
            | MetricKind::NormalizedLaplacianSpectral => {
                let kind = metric.spectral_kind().expect("spectral metric");
                let original = originals
                    .spectra
                    .iter()
                    .find(|(k, _)| *k == kind)
                    .map(|(_, s)| s)
                    .expect("precomputed spectrum");
                let pruned_spectrum = Spectrum::compute(pruned, kind)
                    .map_err(|e: EigenError| fail(metric, Box::new(e) as _))?;
                spectral_distance_between(original, &pruned_spectrum, None)
                    .map_err(|e| fail(metric, Box::new(e) as _))?
            }
            MetricKind::RootEuclidean | MetricKind::SimDeltaCon => {
                if root_ed.is_none() {
                    let s_orig = originals.affinity.as_ref().expect("precomputed affinity");
                    let pruned_affinity: AffinityMatrix = fbp_matrix(pruned)
                        .map_err(|e: AffinityError| fail(metric, Box::new(e) as _))?;
                    let d = netdist_core::root_euclidean_between(s_orig, &pruned_affinity)
                        .map_err(|e| fail(metric, Box::new(e) as _))?;
                    root_ed = Some(d);
                }
                let d = root_ed.expect("cached");
                if metric == MetricKind::RootEuclidean {
                    d
                } else {
                    1.0 / (1.0 + d)
                }
            }
        };
        values.push(v);
    }
    Ok(values)
}

/// Runs the full experiment described by `cfg`. Record order (and the CSV
/// written from it) is sorted by (network, metric, fraction).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome, HarnessError> {
    cfg.validate()?;
    let mut records = Vec::new();
    let mut summaries = Vec::new();

    for (net_idx, entry) in cfg.networks.iter().enumerate() {
        let started = Instant::now();
        let loaded = load_graph(&entry.path, entry.format, entry.delimiter).map_err(|source| {
            HarnessError::Load {
                name: entry.name.clone(),
                source,
            }
        })?;
        // the experiment convention: drop isolates, ignore weights
        let mut g = loaded.graph.strip_isolates().binarized();
        g.set_name(entry.name.clone());

        let originals = precompute(&g, &cfg.metrics, &entry.name)?;
        let mut network_records = 0usize;

        for (frac_idx, &fraction) in cfg.fractions.iter().enumerate() {
            let samples: Vec<Vec<f64>> = (0..cfg.nrep)
                .into_par_iter()
                .map(|rep| {
                    let ctx = ReplicateCtx {
                        name: &entry.name,
                        mode: cfg.mode,
                        fraction,
                        seed: derive_seed(
                            cfg.base_seed,
                            net_idx as u64,
                            frac_idx as u64,
                            rep as u64,
                        ),
                        replicate: rep,
                    };
                    replicate_metrics(&g, &originals, &cfg.metrics, &ctx)
                })
                .collect::<Result<_, _>>()?;

            for (mi, &metric) in cfg.metrics.iter().enumerate() {
                let series: Vec<f64> = samples.iter().map(|row| row[mi]).collect();
                let (mean, std) = aggregate(&series)?;
                records.push(ExperimentRecord {
                    network: entry.name.clone(),
                    mode: cfg.mode,
                    fraction,
                    metric,
                    mean,
                    std,
                    nrep: cfg.nrep,
                    base_seed: cfg.base_seed,
                });
                network_records += 1;
            }
        }
        summaries.push(NetworkSummary {
            name: entry.name.clone(),
            records: network_records,
            seconds: started.elapsed().as_secs_f64(),
        });
    }

    records.sort_by(|a, b| {
        (a.network.as_str(), a.metric)
            .cmp(&(b.network.as_str(), b.metric))
            .then(a.fraction.total_cmp(&b.fraction))
    });
    Ok(ExperimentOutcome { records, summaries })
}

pub const CSV_HEADER: &str = "network,mode,fraction,metric,mean,std,nrep,base_seed";

/// Renders records as CSV: fractions with 4 decimals, statistics with 6
/// significant digits, rows sorted by (network, metric, fraction).
pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut sorted: Vec<&ExperimentRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (a.network.as_str(), a.metric)
            .cmp(&(b.network.as_str(), b.metric))
            .then(a.fraction.total_cmp(&b.fraction))
    });
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted {
        out.push_str(&format!(
            "{},{},{:.4},{},{},{},{},{}\n",
            r.network,
            r.mode,
            r.fraction,
            r.metric,
            format_significant(r.mean, 6),
            format_significant(r.std, 6),
            r.nrep,
            r.base_seed
        ));
    }
    out
}

pub fn write_records_csv(records: &[ExperimentRecord], path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, records_to_csv(records)).map_err(|source| HarnessError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a records CSV produced by [`records_to_csv`].
pub fn parse_records_csv(text: &str) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, other)) => {
            return Err(HarnessError::BadRecord {
                line: 1,
                reason: format!("unexpected header `{other}`"),
            })
        }
        None => {
            return Err(HarnessError::BadRecord {
                line: 1,
                reason: "empty file".to_string(),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(HarnessError::BadRecord {
                line: idx + 1,
                reason: format!("expected 8 fields, found {}", fields.len()),
            });
        }
        let bad = |reason: String| HarnessError::BadRecord { line: idx + 1, reason };
        records.push(ExperimentRecord {
            network: fields[0].to_string(),
            mode: fields[1].parse().map_err(bad)?,
            fraction: fields[2]
                .parse()
                .map_err(|_| bad(format!("bad fraction `{}`", fields[2])))?,
            metric: fields[3].parse().map_err(bad)?,
            mean: fields[4]
                .parse()
                .map_err(|_| bad(format!("bad mean `{}`", fields[4])))?,
            std: fields[5]
                .parse()
                .map_err(|_| bad(format!("bad std `{}`", fields[5])))?,
            nrep: fields[6]
                .parse()
                .map_err(|_| bad(format!("bad nrep `{}`", fields[6])))?,
            base_seed: fields[7]
                .parse()
                .map_err(|_| bad(format!("bad base_seed `{}`", fields[7])))?,
        });
    }
    Ok(records)
}

pub fn read_records_csv(path: &Path) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_records_csv(&text)
}

/// JSON mirror with the same fields and the same rounding as the CSV.
pub fn records_to_json(records: &[ExperimentRecord]) -> String {
    let mut sorted: Vec<&ExperimentRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (a.network.as_str(), a.metric)
            .cmp(&(b.network.as_str(), b.metric))
            .then(a.fraction.total_cmp(&b.fraction))
    });
    let items: Vec<serde_json::Value> = sorted
        .iter()
        .map(|r| {
            serde_json::json!({
                "network": r.network,
                "mode": r.mode.label(),
                "fraction": round_f64(&format!("{:.4}", r.fraction)),
                "metric": r.metric.label(),
                "mean": round_f64(&format_significant(r.mean, 6)),
                "std": round_f64(&format_significant(r.std, 6)),
                "nrep": r.nrep,
                "base_seed": r.base_seed,
            })
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("records serialize")
}

fn round_f64(text: &str) -> f64 {
    text.parse().expect("formatted float parses")
}

pub fn write_records_json(records: &[ExperimentRecord], path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, records_to_json(records)).map_err(|source| HarnessError::Write {
        path: path.to_path_buf(),
        source,
    })
}
