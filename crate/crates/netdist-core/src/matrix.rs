//! Dense representation matrices and the small linear algebra they need.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("linear system is singular (pivot {pivot:e} at column {column})")]
pub struct SingularMatrix {
    pub column: usize,
    pub pivot: f64,
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from row slices; panics unless all rows have length `rows.len()`.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "order mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row_k = &other.data[k * n..(k + 1) * n];
                let row_i = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    row_i[j] += a * row_k[j];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "order mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "order mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Solves `A X = I` by LU decomposition with partial pivoting, i.e.
    /// computes the inverse.
    pub fn solve_identity(&self) -> Result<Matrix, SingularMatrix> {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_val = lu[col * n + col].abs();
            for r in (col + 1)..n {
                let v = lu[r * n + col].abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = r;
                }
            }
            if pivot_val == 0.0 {
                return Err(SingularMatrix { column: col, pivot: 0.0 });
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu[col * n + col];
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                for j in (col + 1)..n {
                    lu[r * n + j] -= factor * lu[col * n + j];
                }
            }
        }

        // one forward/back substitution per unit column of I
        let mut inv = Matrix::zeros(n);
        let mut y = vec![0.0; n];
        for rhs in 0..n {
            for i in 0..n {
                let mut v = if perm[i] == rhs { 1.0 } else { 0.0 };
                for j in 0..i {
                    v -= lu[i * n + j] * y[j];
                }
                y[i] = v;
            }
            for i in (0..n).rev() {
                let mut v = y[i];
                for j in (i + 1)..n {
                    v -= lu[i * n + j] * inv.data[j * n + rhs];
                }
                inv.data[i * n + rhs] = v / lu[i * n + i];
            }
        }
        Ok(inv)
    }
}

/// The representation matrices a spectrum can be taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixKind {
    Adjacency,
    Degree,
    Laplacian,
    NormalizedLaplacian,
}

impl MatrixKind {
    pub fn label(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Degree => "degree",
            MatrixKind::Laplacian => "laplacian",
            MatrixKind::NormalizedLaplacian => "normalized_laplacian",
        }
    }
}

impl core::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// A dense representation matrix tagged with its kind. Rows and columns
/// follow the graph's node order; edges are binarized.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationMatrix {
    pub kind: MatrixKind,
    pub matrix: Matrix,
}

/// Builds the requested representation matrix of a graph.
///
/// The normalised Laplacian uses `D^{-1/2} L D^{-1/2}` with the convention
/// that `D^{-1/2}` is 0 for isolated nodes, so their rows and columns are
/// entirely zero.
pub fn build_matrix(g: &Graph, kind: MatrixKind) -> RepresentationMatrix {
    let n = g.node_count();
    let mut m = Matrix::zeros(n);
    match kind {
        MatrixKind::Adjacency => {
            for (i, j) in g.edges() {
                m.set(i, j, 1.0);
                m.set(j, i, 1.0);
            }
        }
        MatrixKind::Degree => {
            for i in 0..n {
                m.set(i, i, g.degree_of(i) as f64);
            }
        }
        MatrixKind::Laplacian => {
            for i in 0..n {
                m.set(i, i, g.degree_of(i) as f64);
            }
            for (i, j) in g.edges() {
                m.set(i, j, -1.0);
                m.set(j, i, -1.0);
            }
        }
        MatrixKind::NormalizedLaplacian => {
            let inv_sqrt: Vec<f64> = (0..n)
                .map(|i| {
                    let k = g.degree_of(i);
                    if k == 0 {
                        0.0
                    } else {
                        1.0 / math::sqrt(k as f64)
                    }
                })
                .collect();
            for i in 0..n {
                if g.degree_of(i) > 0 {
                    m.set(i, i, 1.0);
                }
            }
            for (i, j) in g.edges() {
                let v = -inv_sqrt[i] * inv_sqrt[j];
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
    }
    RepresentationMatrix { kind, matrix: m }
}
