//! Undirected simple graph with a declared node set.
//!
//! Node identifiers are kept verbatim from the input (strings or integers,
//! both stored as strings). Isolated nodes are first-class: a node stays in
//! the node set even when it has no incident edges, which is what the
//! pruning experiments rely on. Edge weights can be stored but no structural
//! metric ever reads them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop on node `{0}` is not allowed")]
    SelfLoop(String),
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("graph has no nodes")]
    EmptyGraph,
}

/// Undirected simple graph. No self-loops, no duplicate edges; `(i, j)` and
/// `(j, i)` denote the same edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    name: String,
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    /// Stored per edge under the canonical `(min, max)` index pair.
    weights: BTreeMap<(usize, usize), f64>,
    edge_count: usize,
}

impl Graph {
    pub fn new(name: impl Into<String>) -> Self {
        Graph {
            name: name.into(),
            ids: Vec::new(),
            index: BTreeMap::new(),
            adj: Vec::new(),
            weights: BTreeMap::new(),
            edge_count: 0,
        }
    }

    /// Builds a graph from `(source, target)` id pairs; nodes are created in
    /// order of first appearance.
    pub fn from_edge_ids<'a>(
        name: impl Into<String>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(name);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Node identifiers in insertion order; this order fixes the row/column
    /// indexing of every representation matrix.
    pub fn node_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn node_id(&self, idx: usize) -> &str {
        &self.ids[idx]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Adds a node if absent; returns its index either way.
    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.ids.len();
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    /// Adds an undirected edge, creating missing endpoints. Returns `false`
    /// when the edge was already present (duplicates collapse).
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<bool, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        let i = self.add_node(a);
        let j = self.add_node(b);
        Ok(self.insert_edge(i, j))
    }

    /// As [`add_edge`](Self::add_edge), storing `weight` for a newly created
    /// edge. On a duplicate the first weight wins.
    pub fn add_weighted_edge(&mut self, a: &str, b: &str, weight: f64) -> Result<bool, GraphError> {
        if weight <= 0.0 || weight.is_nan() {
            return Err(GraphError::NonPositiveWeight(weight));
        }
        let inserted = self.add_edge(a, b)?;
        if inserted {
            let i = self.index[a];
            let j = self.index[b];
            self.weights.insert(Self::key(i, j), weight);
        }
        Ok(inserted)
    }

    /// Index-based edge insertion for loaders that pre-register the node set.
    /// Returns `false` on duplicates.
    pub fn add_edge_indexed(&mut self, i: usize, j: usize) -> Result<bool, GraphError> {
        assert!(i < self.ids.len() && j < self.ids.len(), "node index out of range");
        if i == j {
            return Err(GraphError::SelfLoop(self.ids[i].clone()));
        }
        Ok(self.insert_edge(i, j))
    }

    pub fn set_weight(&mut self, i: usize, j: usize, weight: f64) -> Result<(), GraphError> {
        if weight <= 0.0 || weight.is_nan() {
            return Err(GraphError::NonPositiveWeight(weight));
        }
        if self.has_edge(i, j) {
            self.weights.insert(Self::key(i, j), weight);
        }
        Ok(())
    }

    fn insert_edge(&mut self, i: usize, j: usize) -> bool {
        let new = self.adj[i].insert(j);
        if new {
            self.adj[j].insert(i);
            self.edge_count += 1;
        }
        new
    }

    /// Removes an edge if present (and any stored weight for it).
    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        let removed = self.adj[i].remove(&j);
        if removed {
            self.adj[j].remove(&i);
            self.weights.remove(&Self::key(i, j));
            self.edge_count -= 1;
        }
        removed
    }

    fn key(i: usize, j: usize) -> (usize, usize) {
        if i < j {
            (i, j)
        } else {
            (j, i)
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i).is_some_and(|s| s.contains(&j))
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.weights.get(&Self::key(i, j)).copied()
    }

    /// Number of incident edges of the node with the given id.
    pub fn degree(&self, id: &str) -> Result<usize, GraphError> {
        let i = self
            .node_index(id)
            .ok_or_else(|| GraphError::UnknownNode(id.to_string()))?;
        Ok(self.degree_of(i))
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_isolate(&self, idx: usize) -> bool {
        self.adj[idx].is_empty()
    }

    pub fn isolate_count(&self) -> usize {
        self.adj.iter().filter(|s| s.is_empty()).count()
    }

    /// Neighbor indices of a node, in ascending index order.
    pub fn neighbors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[idx].iter().copied()
    }

    /// All edges as `(i, j)` index pairs with `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.range(i + 1..).map(move |&j| (i, j)))
    }

    /// All edges as id pairs, in the same order as [`edges`](Self::edges).
    pub fn edge_ids(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges()
            .map(|(i, j)| (self.ids[i].as_str(), self.ids[j].as_str()))
    }

    /// Copy without degree-0 nodes. Edges and their weights are unchanged.
    pub fn strip_isolates(&self) -> Graph {
        let mut g = Graph::new(self.name.clone());
        for (i, id) in self.ids.iter().enumerate() {
            if !self.adj[i].is_empty() {
                g.add_node(id);
            }
        }
        for (i, j) in self.edges() {
            let a = g.index[&self.ids[i]];
            let b = g.index[&self.ids[j]];
            g.insert_edge(a, b);
            if let Some(w) = self.weight(i, j) {
                g.weights.insert(Self::key(a, b), w);
            }
        }
        g
    }

    /// Copy with all stored weights dropped. Structure is unchanged; metrics
    /// never read weights, so this only affects what gets serialized.
    pub fn binarized(&self) -> Graph {
        let mut g = self.clone();
        g.weights.clear();
        g
    }

    /// Structural equality: same ids in the same order, same edges, same
    /// weights — the name label is ignored.
    pub fn structural_eq(&self, other: &Graph) -> bool {
        self.ids == other.ids && self.adj == other.adj && self.weights == other.weights
    }
}

/// Projects an actor-by-event incidence structure onto an actor graph: two
/// actors are linked iff they attended at least one common event, and the
/// edge weight counts the shared events. Actor ids are synthesized as
/// `0..rows-1`.
pub fn project_incidence(name: impl Into<String>, incidence: &[Vec<bool>]) -> Graph {
    let rows = incidence.len();
    let mut g = Graph::new(name);
    for r in 0..rows {
        g.add_node(&r.to_string());
    }
    if rows == 0 {
        return g;
    }
    let cols = incidence[0].len();
    for a in 0..rows {
        for b in (a + 1)..rows {
            let shared = (0..cols).filter(|&e| incidence[a][e] && incidence[b][e]).count();
            if shared > 0 {
                g.insert_edge(a, b);
                g.weights.insert((a, b), shared as f64);
            }
        }
    }
    g
}
