//! Graph file ingestion: edge lists, 1-mode adjacency matrices, and 2-mode
//! incidence matrices.
//!
//! Edge lists are plain text, one edge per line as
//! `source<delim>target[<delim>weight]` with a configurable delimiter
//! (comma by default); `#` starts a comment line. Matrix files are
//! delimiter-separated numeric grids; an optional header row and label
//! column are detected by a non-numeric first token and skipped, node ids
//! are always synthesized as `0..n-1`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use netdist_core::{project_incidence, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{name}: no data rows")]
    Empty { name: String },
    #[error("{name}, row {row}: {reason}")]
    MalformedRow {
        name: String,
        row: usize,
        reason: String,
    },
    #[error("{name}, row {row}: weight must be a positive real, got `{value}`")]
    BadWeight {
        name: String,
        row: usize,
        value: String,
    },
    #[error("{name}, row {row}: self-loop on `{id}`")]
    SelfLoop {
        name: String,
        row: usize,
        id: String,
    },
    #[error("{name}: matrix is not square ({rows} rows x {cols} columns)")]
    NotSquare {
        name: String,
        rows: usize,
        cols: usize,
    },
    #[error("{name}: matrix rows have inconsistent lengths (row {row} has {got}, expected {expected})")]
    RaggedRows {
        name: String,
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("{name}: asymmetric at ({i},{j}): {a} vs {b}")]
    Asymmetric {
        name: String,
        i: usize,
        j: usize,
        a: f64,
        b: f64,
    },
    #[error("{name}: nonzero diagonal entry {value} at index {i}")]
    NonzeroDiagonal { name: String, i: usize, value: f64 },
    #[error("{name}: entry ({i},{j}) must be 0 or 1 in a 2-mode matrix, got {value}")]
    NonBinaryEntry {
        name: String,
        i: usize,
        j: usize,
        value: f64,
    },
    #[error("{name}: {source}")]
    Graph {
        name: String,
        #[source]
        source: GraphError,
    },
}

/// A loaded graph plus ingestion bookkeeping.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: Graph,
    /// Edge rows that collapsed onto an already-present edge.
    pub duplicate_rows: usize,
}

/// The file formats the toolkit understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    AdjacencyMatrix,
    TwoMode,
}

impl GraphFormat {
    pub fn label(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::AdjacencyMatrix => "matrix",
            GraphFormat::TwoMode => "twomode",
        }
    }
}

impl std::fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            "matrix" | "adjacency" => Ok(GraphFormat::AdjacencyMatrix),
            "twomode" | "2mode" => Ok(GraphFormat::TwoMode),
            other => Err(format!(
                "unknown graph format `{other}` (expected edgelist, matrix, or twomode)"
            )),
        }
    }
}

/// Loads a graph with the given format; edge lists use `delimiter`.
pub fn load_graph(path: &Path, format: GraphFormat, delimiter: char) -> Result<Loaded, LoadError> {
    match format {
        GraphFormat::EdgeList => load_edge_list(path, delimiter),
        GraphFormat::AdjacencyMatrix => load_adjacency_matrix(path),
        GraphFormat::TwoMode => project_two_mode(path),
    }
}

fn read_file(path: &Path) -> Result<(String, String), LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok((text, name))
}

pub fn load_edge_list(path: &Path, delimiter: char) -> Result<Loaded, LoadError> {
    let (text, name) = read_file(path)?;
    parse_edge_list(&text, delimiter, &name)
}

/// Parses edge-list text; `name` labels the graph and error messages.
pub fn parse_edge_list(text: &str, delimiter: char, name: &str) -> Result<Loaded, LoadError> {
    let mut graph = Graph::new(name);
    let mut duplicate_rows = 0usize;
    let mut saw_data = false;

    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        saw_data = true;
        let fields: Vec<&str> = split_fields(line, delimiter);
        if fields.len() < 2 || fields.len() > 3 {
            return Err(LoadError::MalformedRow {
                name: name.to_string(),
                row,
                reason: format!("expected 2 or 3 fields, found {}", fields.len()),
            });
        }
        let (a, b) = (fields[0], fields[1]);
        let added = if fields.len() == 3 {
            let w: f64 = fields[2].parse().map_err(|_| LoadError::BadWeight {
                name: name.to_string(),
                row,
                value: fields[2].to_string(),
            })?;
            if w <= 0.0 || w.is_nan() {
                return Err(LoadError::BadWeight {
                    name: name.to_string(),
                    row,
                    value: fields[2].to_string(),
                });
            }
            graph.add_weighted_edge(a, b, w)
        } else {
            graph.add_edge(a, b)
        };
        match added {
            Ok(true) => {}
            Ok(false) => duplicate_rows += 1,
            Err(GraphError::SelfLoop(id)) => {
                return Err(LoadError::SelfLoop {
                    name: name.to_string(),
                    row,
                    id,
                })
            }
            Err(source) => {
                return Err(LoadError::Graph {
                    name: name.to_string(),
                    source,
                })
            }
        }
    }
    if !saw_data {
        return Err(LoadError::Empty { name: name.to_string() });
    }
    Ok(Loaded { graph, duplicate_rows })
}

fn split_fields(line: &str, delimiter: char) -> Vec<&str> {
    if delimiter.is_whitespace() {
        line.split_whitespace().collect()
    } else {
        line.split(delimiter).map(str::trim).collect()
    }
}

/// Writes `graph` as an edge list (one `a<delim>b[<delim>weight]` row per
/// edge). Isolated nodes cannot be represented in this format.
pub fn write_edge_list(graph: &Graph, path: &Path, delimiter: char) -> Result<(), LoadError> {
    let io_err = |source| LoadError::Write { path: path.to_path_buf(), source };
    let mut out = fs::File::create(path).map_err(io_err)?;
    for (i, j) in graph.edges() {
        let a = graph.node_id(i);
        let b = graph.node_id(j);
        match graph.weight(i, j) {
            Some(w) => writeln!(out, "{a}{delimiter}{b}{delimiter}{w}").map_err(io_err)?,
            None => writeln!(out, "{a}{delimiter}{b}").map_err(io_err)?,
        }
    }
    Ok(())
}

/// Numeric grid plus dimensions, after header stripping.
fn parse_numeric_grid(text: &str, name: &str) -> Result<Vec<Vec<f64>>, LoadError> {
    let mut rows: Vec<Vec<&str>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let delim = detect_delimiter(line);
        rows.push(split_fields(line, delim));
    }
    if rows.is_empty() {
        return Err(LoadError::Empty { name: name.to_string() });
    }

    let is_num = |t: &str| t.parse::<f64>().is_ok();
    // header row: entirely non-numeric first row
    if rows.len() > 1 && rows[0].iter().all(|t| !is_num(t)) {
        rows.remove(0);
    }
    // header column: every remaining row starting with a non-numeric token
    let has_label_col = rows.iter().all(|r| !r.is_empty() && !is_num(r[0]));
    if has_label_col {
        for r in &mut rows {
            r.remove(0);
        }
    }

    let expected = rows[0].len();
    let mut grid = Vec::with_capacity(rows.len());
    for (ri, row) in rows.iter().enumerate() {
        if row.len() != expected {
            return Err(LoadError::RaggedRows {
                name: name.to_string(),
                row: ri + 1,
                got: row.len(),
                expected,
            });
        }
        let mut vals = Vec::with_capacity(expected);
        for (ci, tok) in row.iter().enumerate() {
            let v: f64 = tok.parse().map_err(|_| LoadError::MalformedRow {
                name: name.to_string(),
                row: ri + 1,
                reason: format!("non-numeric entry `{tok}` in column {}", ci + 1),
            })?;
            vals.push(v);
        }
        grid.push(vals);
    }
    Ok(grid)
}

fn detect_delimiter(line: &str) -> char {
    for d in [',', ';', '\t'] {
        if line.contains(d) {
            return d;
        }
    }
    ' '
}

pub fn load_adjacency_matrix(path: &Path) -> Result<Loaded, LoadError> {
    let (text, name) = read_file(path)?;
    parse_adjacency_matrix(&text, &name)
}

/// Parses a square symmetric numeric matrix. Nodes keep their row order
/// with ids `0..n-1`; rows of zeros become isolated nodes; nonzero entries
/// become edges with the entry stored as the weight.
#[allow(clippy::needless_range_loop)]
pub fn parse_adjacency_matrix(text: &str, name: &str) -> Result<Loaded, LoadError> {
    let grid = parse_numeric_grid(text, name)?;
    let n = grid.len();
    if grid[0].len() != n {
        return Err(LoadError::NotSquare {
            name: name.to_string(),
            rows: n,
            cols: grid[0].len(),
        });
    }
    for i in 0..n {
        if grid[i][i].abs() > 1e-12 {
            return Err(LoadError::NonzeroDiagonal {
                name: name.to_string(),
                i,
                value: grid[i][i],
            });
        }
        for j in (i + 1)..n {
            if (grid[i][j] - grid[j][i]).abs() > 1e-9 {
                return Err(LoadError::Asymmetric {
                    name: name.to_string(),
                    i,
                    j,
                    a: grid[i][j],
                    b: grid[j][i],
                });
            }
        }
    }

    let mut graph = Graph::new(name);
    for i in 0..n {
        graph.add_node(&i.to_string());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = grid[i][j];
            if v != 0.0 {
                graph
                    .add_edge_indexed(i, j)
                    .and_then(|_| graph.set_weight(i, j, v))
                    .map_err(|source| LoadError::Graph {
                        name: name.to_string(),
                        source,
                    })?;
            }
        }
    }
    Ok(Loaded { graph, duplicate_rows: 0 })
}

pub fn project_two_mode(path: &Path) -> Result<Loaded, LoadError> {
    let (text, name) = read_file(path)?;
    parse_two_mode(&text, &name)
}

/// Parses a rectangular 0/1 actor-by-event incidence matrix and projects it
/// onto the actor graph (edge weight = number of shared events).
pub fn parse_two_mode(text: &str, name: &str) -> Result<Loaded, LoadError> {
    let grid = parse_numeric_grid(text, name)?;
    let mut incidence = Vec::with_capacity(grid.len());
    for (i, row) in grid.iter().enumerate() {
        let mut flags = Vec::with_capacity(row.len());
        for (j, &v) in row.iter().enumerate() {
            match v {
                0.0 => flags.push(false),
                1.0 => flags.push(true),
                value => {
                    return Err(LoadError::NonBinaryEntry {
                        name: name.to_string(),
                        i,
                        j,
                        value,
                    })
                }
            }
        }
        incidence.push(flags);
    }
    Ok(Loaded {
        graph: project_incidence(name, &incidence),
        duplicate_rows: 0,
    })
}
