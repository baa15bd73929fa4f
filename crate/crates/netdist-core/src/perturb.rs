//! The two pruning scenarios: random edge removal and node isolation.
//!
//! Both operators keep the node set intact — an isolated node stays in the
//! graph — and are deterministic functions of `(graph, spec)`: element
//! candidates are collected in sorted order and then shuffled by a seeded
//! generator, so results do not depend on in-memory iteration order.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use thiserror::Error;

use crate::graph::Graph;

/// The deterministic generator used everywhere randomness is needed:
/// ChaCha (8 rounds), seeded via `seed_from_u64`. Identical seeds produce
/// identical streams on every platform.
pub type PruneRng = rand_chacha::ChaCha8Rng;

/// Seeded, platform-independent random stream.
pub fn make_rng(seed: u64) -> PruneRng {
    PruneRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PruneError {
    #[error("fraction must lie in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("prune spec mode {got:?} does not match operation {expected:?}")]
    ModeMismatch { expected: PruneMode, got: PruneMode },
    #[error("graph has no edges to remove")]
    EmptyEdgeSet,
    #[error("graph has no non-isolated nodes")]
    NoEligibleNodes,
    #[error("cannot prune {requested} elements, only {available} available")]
    CountExceedsAvailable { requested: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PruneMode {
    /// Delete randomly chosen edges; models unintercepted calls/meetings.
    EdgeRemoval,
    /// Strip randomly chosen nodes of all incident edges, keeping the nodes
    /// in place; models suspects that could not be investigated.
    NodeIsolation,
}

impl PruneMode {
    pub fn label(self) -> &'static str {
        match self {
            PruneMode::EdgeRemoval => "edges",
            PruneMode::NodeIsolation => "nodes",
        }
    }
}

impl core::fmt::Display for PruneMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

impl core::str::FromStr for PruneMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edges" => Ok(PruneMode::EdgeRemoval),
            "nodes" => Ok(PruneMode::NodeIsolation),
            other => Err(alloc::format!("unknown prune mode `{other}` (expected `edges` or `nodes`)")),
        }
    }
}

/// What to prune and with which seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PruneSpec {
    pub mode: PruneMode,
    pub fraction: f64,
    pub seed: u64,
}

impl PruneSpec {
    pub fn new(mode: PruneMode, fraction: f64, seed: u64) -> Result<Self, PruneError> {
        if fraction <= 0.0 || fraction > 1.0 || fraction.is_nan() {
            return Err(PruneError::InvalidFraction(fraction));
        }
        Ok(PruneSpec { mode, fraction, seed })
    }
}

/// A pruned copy plus the identities of what was removed.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneResult {
    pub pruned: Graph,
    /// Deleted edges as id pairs, in selection order.
    pub removed_edges: Vec<(String, String)>,
    /// Nodes stripped of their edges (node-isolation mode only).
    pub isolated_nodes: Vec<String>,
    pub spec: PruneSpec,
}

/// Fraction of a population as an element count: round half up, at least 1.
fn realized_count(fraction: f64, population: usize) -> usize {
    let c = (fraction * population as f64 + 0.5) as usize;
    c.max(1)
}

/// Deletes `round(fraction * m)` (at least 1) distinct edges chosen
/// uniformly; the node set is unchanged.
pub fn remove_random_edges(g: &Graph, spec: &PruneSpec) -> Result<PruneResult, PruneError> {
    if spec.mode != PruneMode::EdgeRemoval {
        return Err(PruneError::ModeMismatch {
            expected: PruneMode::EdgeRemoval,
            got: spec.mode,
        });
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(PruneError::EmptyEdgeSet);
    }
    let count = realized_count(spec.fraction, m);
    if count > m {
        return Err(PruneError::CountExceedsAvailable { requested: count, available: m });
    }

    let mut candidates: Vec<(usize, usize)> = g.edges().collect();
    candidates.shuffle(&mut make_rng(spec.seed));

    let mut pruned = g.clone();
    let mut removed_edges = Vec::with_capacity(count);
    for &(i, j) in candidates.iter().take(count) {
        pruned.remove_edge(i, j);
        removed_edges.push((String::from(g.node_id(i)), String::from(g.node_id(j))));
    }
    Ok(PruneResult {
        pruned,
        removed_edges,
        isolated_nodes: Vec::new(),
        spec: *spec,
    })
}

/// Picks `round(fraction * n)` (at least 1) distinct nodes among the
/// currently non-isolated ones and deletes all their incident edges. The
/// nodes themselves stay in the graph as isolates.
pub fn isolate_random_nodes(g: &Graph, spec: &PruneSpec) -> Result<PruneResult, PruneError> {
    if spec.mode != PruneMode::NodeIsolation {
        return Err(PruneError::ModeMismatch {
            expected: PruneMode::NodeIsolation,
            got: spec.mode,
        });
    }
    let mut candidates: Vec<usize> = (0..g.node_count()).filter(|&i| !g.is_isolate(i)).collect();
    if candidates.is_empty() {
        return Err(PruneError::NoEligibleNodes);
    }
    let count = realized_count(spec.fraction, g.node_count());
    if count > candidates.len() {
        return Err(PruneError::CountExceedsAvailable {
            requested: count,
            available: candidates.len(),
        });
    }

    candidates.shuffle(&mut make_rng(spec.seed));

    let mut pruned = g.clone();
    let mut removed_edges = Vec::new();
    let mut isolated_nodes = Vec::with_capacity(count);
    for &v in candidates.iter().take(count) {
        isolated_nodes.push(String::from(g.node_id(v)));
        let nbrs: Vec<usize> = pruned.neighbors(v).collect();
        for w in nbrs {
            pruned.remove_edge(v, w);
            removed_edges.push((String::from(g.node_id(v)), String::from(g.node_id(w))));
        }
    }
    Ok(PruneResult {
        pruned,
        removed_edges,
        isolated_nodes,
        spec: *spec,
    })
}

/// Dispatches on the spec's mode.
pub fn prune(g: &Graph, spec: &PruneSpec) -> Result<PruneResult, PruneError> {
    match spec.mode {
        PruneMode::EdgeRemoval => remove_random_edges(g, spec),
        PruneMode::NodeIsolation => isolate_random_nodes(g, spec),
    }
}
