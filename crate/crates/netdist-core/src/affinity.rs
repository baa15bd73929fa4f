//! Matrix-distance family: fast-belief-propagation affinities, root
//! Euclidean distance, DeltaCon similarity, edit distance, and the
//! shortest-path matrix distance.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;
use crate::math;
use crate::matrix::{build_matrix, Matrix, MatrixKind, SingularMatrix};
use crate::spectrum::DistanceError;

/// Entries in `(-NEG_CLAMP, 0)` are round-off and clamp to 0; anything more
/// negative violates the affinity assumption and is reported as an error.
const NEG_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AffinityError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("series order must be at least 1")]
    InvalidOrder,
    #[error("affinity entry ({row},{col}) = {value} is substantially negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("affinity system is singular: {0}")]
    Singular(#[from] SingularMatrix),
}

/// Node-affinity matrix `S = (I + eps^2 D - eps A)^{-1}` with
/// `eps = 1 / (1 + max_i D_ii)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityMatrix {
    epsilon: f64,
    matrix: Matrix,
}

impl AffinityMatrix {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

fn epsilon_of(g: &Graph) -> f64 {
    1.0 / (1.0 + g.max_degree() as f64)
}

/// System matrix `I + eps^2 D - eps A`.
fn fbp_system(g: &Graph, eps: f64) -> Matrix {
    let n = g.node_count();
    let mut b = Matrix::identity(n);
    for i in 0..n {
        b.set(i, i, 1.0 + eps * eps * g.degree_of(i) as f64);
    }
    for (i, j) in g.edges() {
        b.set(i, j, -eps);
        b.set(j, i, -eps);
    }
    b
}

/// Exact fast-belief-propagation affinity matrix, computed by a pivoted
/// dense solve of `(I + eps^2 D - eps A) S = I`.
pub fn fbp_matrix(g: &Graph) -> Result<AffinityMatrix, AffinityError> {
    if g.node_count() == 0 {
        return Err(AffinityError::EmptyGraph);
    }
    let epsilon = epsilon_of(g);
    let matrix = fbp_system(g, epsilon).solve_identity()?;
    Ok(AffinityMatrix { epsilon, matrix })
}

/// Truncated power-series approximation of the affinity matrix,
/// `I + eps A + eps^2 (A^2 - D) + ...` up to the given power of `eps`.
/// Retained as a consistency oracle; the metric path uses [`fbp_matrix`].
pub fn fbp_series(g: &Graph, order: usize) -> Result<Matrix, AffinityError> {
    if order < 1 {
        return Err(AffinityError::InvalidOrder);
    }
    let n = g.node_count();
    let eps = epsilon_of(g);
    let a = build_matrix(g, MatrixKind::Adjacency).matrix;
    let d = build_matrix(g, MatrixKind::Degree).matrix;

    // term recurrence: P_0 = I, P_1 = A, P_k = A P_{k-1} - D P_{k-2}
    let mut sum = Matrix::identity(n);
    let mut prev2 = Matrix::identity(n);
    let mut prev1 = a.clone();
    let mut eps_pow = eps;
    sum = sum.add(&prev1.scale(eps_pow));
    for _ in 2..=order {
        let next = a.mul(&prev1).sub(&d.mul(&prev2));
        eps_pow *= eps;
        sum = sum.add(&next.scale(eps_pow));
        prev2 = prev1;
        prev1 = next;
    }
    Ok(sum)
}

/// Entrywise square root with the round-off clamp; errors on substantially
/// negative entries.
fn sqrt_entries(s: &AffinityMatrix) -> Result<Vec<f64>, AffinityError> {
    let n = s.order();
    let mut out = Vec::with_capacity(n * n);
    for (idx, &v) in s.matrix.entries().iter().enumerate() {
        let v = if v < 0.0 {
            if v <= -NEG_CLAMP {
                return Err(AffinityError::NegativeEntry {
                    row: idx / n,
                    col: idx % n,
                    value: v,
                });
            }
            0.0
        } else {
            v
        };
        out.push(math::sqrt(v));
    }
    Ok(out)
}

/// Root Euclidean (Matsusita) distance between two precomputed affinity
/// matrices. A smaller matrix is padded as if its graph had been extended
/// with isolated nodes, whose affinity block is the identity.
pub fn root_euclidean_between(
    s1: &AffinityMatrix,
    s2: &AffinityMatrix,
) -> Result<f64, AffinityError> {
    let r1 = sqrt_entries(s1)?;
    let r2 = sqrt_entries(s2)?;
    let (n1, n2) = (s1.order(), s2.order());
    let n = n1.max(n2);
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = entry_padded(&r1, n1, i, j);
            let b = entry_padded(&r2, n2, i, j);
            let d = a - b;
            sum += d * d;
        }
    }
    Ok(math::sqrt(sum))
}

/// Reads `sqrt(S)` extended with an identity block for padded indices.
fn entry_padded(r: &[f64], order: usize, i: usize, j: usize) -> f64 {
    if i < order && j < order {
        r[i * order + j]
    } else if i == j {
        1.0
    } else {
        0.0
    }
}

/// Root Euclidean distance between two graphs via their FBP matrices.
/// Unequal node counts are reconciled by treating the smaller graph as
/// padded with isolated nodes.
pub fn root_euclidean_distance(g1: &Graph, g2: &Graph) -> Result<f64, AffinityError> {
    let s1 = fbp_matrix(g1)?;
    let s2 = fbp_matrix(g2)?;
    root_euclidean_between(&s1, &s2)
}

/// DeltaCon similarity `1 / (1 + d_rootED)`, in `(0, 1]`.
pub fn deltacon_similarity(g1: &Graph, g2: &Graph) -> Result<f64, AffinityError> {
    Ok(1.0 / (1.0 + root_euclidean_distance(g1, g2)?))
}

/// DeltaCon similarity from precomputed affinity matrices.
pub fn deltacon_between(s1: &AffinityMatrix, s2: &AffinityMatrix) -> Result<f64, AffinityError> {
    Ok(1.0 / (1.0 + root_euclidean_between(s1, s2)?))
}

/// Number of differing edges between two graphs on the same node count
/// (index-aligned), i.e. the halved entrywise L1 norm of `A - A'`.
pub fn edit_distance(g1: &Graph, g2: &Graph) -> Result<f64, DistanceError> {
    if g1.node_count() != g2.node_count() {
        return Err(DistanceError::NodeCountMismatch(
            g1.node_count(),
            g2.node_count(),
        ));
    }
    let mut differing = 0usize;
    for (i, j) in g1.edges() {
        if !g2.has_edge(i, j) {
            differing += 1;
        }
    }
    for (i, j) in g2.edges() {
        if !g1.has_edge(i, j) {
            differing += 1;
        }
    }
    Ok(differing as f64)
}

/// Frobenius norm of the difference of the two pairwise shortest-path
/// matrices, with unreachable pairs replaced by `unreachable_value`
/// (default: the node count).
pub fn shortest_path_matrix_distance(
    g1: &Graph,
    g2: &Graph,
    unreachable_value: Option<f64>,
) -> Result<f64, DistanceError> {
    let n = g1.node_count();
    if n != g2.node_count() {
        return Err(DistanceError::NodeCountMismatch(n, g2.node_count()));
    }
    let sub = unreachable_value.unwrap_or(n as f64);
    if sub <= 0.0 || sub.is_nan() {
        return Err(DistanceError::InvalidUnreachableValue(sub));
    }
    let h1 = g1.shortest_path_lengths();
    let h2 = g2.shortest_path_lengths();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = h1.get_or(i, j, sub) - h2.get_or(i, j, sub);
            sum += d * d;
        }
    }
    Ok(math::sqrt(sum))
}
