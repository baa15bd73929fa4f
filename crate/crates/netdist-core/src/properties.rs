//! Scalar structural properties: degrees, clustering, components, distances.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError};

/// Hop-count sentinel for unreachable pairs. Kept internal; callers see
/// `Option` through [`HopMatrix::get`] or pick a finite substitute through
/// [`HopMatrix::get_or`].
const UNREACHABLE: u32 = u32::MAX;

/// Symmetric matrix of shortest-path hop counts, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopMatrix {
    n: usize,
    data: Vec<u32>,
}

impl HopMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `None` marks an unreachable pair.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.data[i * self.n + j];
        (d != UNREACHABLE).then_some(d)
    }

    /// Hop count with a finite substitution for unreachable pairs.
    pub fn get_or(&self, i: usize, j: usize, unreachable_value: f64) -> f64 {
        match self.get(i, j) {
            Some(d) => d as f64,
            None => unreachable_value,
        }
    }

    /// Largest finite entry (the diameter over components).
    pub fn max_finite(&self) -> u32 {
        self.data
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

/// Normalised degree histogram: `p_k = n_k / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    entries: BTreeMap<usize, f64>,
}

impl DegreeDistribution {
    /// Probability that a random node has degree `k` (0 for absent degrees).
    pub fn probability(&self, k: usize) -> f64 {
        self.entries.get(&k).copied().unwrap_or(0.0)
    }

    /// `(degree, probability)` pairs in ascending degree order; only degrees
    /// present in the graph appear.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&k, &p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The statistics bundle reported for each network.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphProperties {
    pub n: usize,
    pub n_isolated: usize,
    pub m: usize,
    pub n_components: usize,
    /// Max over components (with at least two nodes) of the mean
    /// shortest-path length over unordered in-component pairs.
    pub max_avg_path_length: f64,
    /// Longest finite shortest path (diameter over components).
    pub max_shortest_path: usize,
    pub density: f64,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub avg_clustering: f64,
}

impl Graph {
    /// Degree histogram normalised by the node count.
    pub fn degree_distribution(&self) -> Result<DegreeDistribution, GraphError> {
        let n = self.node_count();
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..n {
            *counts.entry(self.degree_of(i)).or_insert(0) += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(k, nk)| (k, nk as f64 / n as f64))
            .collect();
        Ok(DegreeDistribution { entries })
    }

    /// Local clustering coefficient `C_v = 2 L_v / (k_v (k_v - 1))`, defined
    /// as 0 for nodes of degree < 2.
    pub fn clustering_coefficient(&self, id: &str) -> Result<f64, GraphError> {
        let i = self
            .node_index(id)
            .ok_or_else(|| GraphError::UnknownNode(String::from(id)))?;
        Ok(self.clustering_of(i))
    }

    pub fn clustering_of(&self, idx: usize) -> f64 {
        let nbrs: Vec<usize> = self.neighbors(idx).collect();
        let k = nbrs.len();
        if k < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for (a, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[a + 1..] {
                if self.has_edge(u, w) {
                    links += 1;
                }
            }
        }
        2.0 * links as f64 / (k * (k - 1)) as f64
    }

    /// Mean of the local clustering coefficient over all nodes (degree-<2
    /// nodes contribute 0).
    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        (0..n).map(|i| self.clustering_of(i)).sum::<f64>() / n as f64
    }

    /// Connected components as node-index sets. Each inner vector is sorted
    /// ascending and the outer list is ordered by the smallest contained
    /// index, so output is deterministic.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut queue = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Connected components as node-id sets, each sorted by id, the list
    /// ordered by each component's smallest id. Isolates are singletons.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        let mut comps: Vec<Vec<String>> = self
            .component_indices()
            .into_iter()
            .map(|comp| {
                let mut ids: Vec<String> = comp
                    .into_iter()
                    .map(|i| String::from(self.node_id(i)))
                    .collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        comps.sort_unstable();
        comps
    }

    /// All-pairs shortest-path hop counts by breadth-first traversal.
    pub fn shortest_path_lengths(&self) -> HopMatrix {
        let n = self.node_count();
        let mut data = vec![UNREACHABLE; n * n];
        let mut queue: Vec<usize> = Vec::with_capacity(n);
        for s in 0..n {
            let row = &mut data[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                let dv = row[v];
                for w in self.neighbors(v) {
                    if row[w] == UNREACHABLE {
                        row[w] = dv + 1;
                        queue.push(w);
                    }
                }
            }
        }
        HopMatrix { n, data }
    }

    /// Edge density `2m / (n (n - 1))`; 0 for graphs with fewer than two
    /// nodes.
    pub fn density(&self) -> f64 {
        let n = self.node_count();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / (n as f64 * (n as f64 - 1.0))
    }

    /// Full property bundle; errors on the empty graph.
    pub fn properties(&self) -> Result<GraphProperties, GraphError> {
        let n = self.node_count();
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let hops = self.shortest_path_lengths();
        let components = self.component_indices();

        let mut max_avg_path = 0.0f64;
        for comp in &components {
            let s = comp.len();
            if s < 2 {
                continue;
            }
            let mut total = 0u64;
            for (a, &u) in comp.iter().enumerate() {
                for &v in &comp[a + 1..] {
                    // nodes of one component are mutually reachable
                    total += u64::from(hops.get(u, v).expect("in-component pair"));
                }
            }
            let pairs = (s * (s - 1) / 2) as f64;
            let avg = total as f64 / pairs;
            if avg > max_avg_path {
                max_avg_path = avg;
            }
        }

        Ok(GraphProperties {
            n,
            n_isolated: self.isolate_count(),
            m: self.edge_count(),
            n_components: components.len(),
            max_avg_path_length: max_avg_path,
            max_shortest_path: hops.max_finite() as usize,
            density: self.density(),
            avg_degree: 2.0 * self.edge_count() as f64 / n as f64,
            max_degree: self.max_degree(),
            avg_clustering: self.average_clustering(),
        })
    }
}
