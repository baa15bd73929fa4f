//! Graph spectra and the spectral distance family.
//!
//! Adjacency spectra are kept in descending order, Laplacian and normalised
//! Laplacian spectra in ascending order, so the "first k" entries of a
//! spectrum are exactly the eigenvalues each distance compares (largest k
//! for the adjacency distance, smallest k for the two Laplacian distances).

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::eigen::{self, EigenError};
use crate::graph::Graph;
use crate::math;
use crate::matrix::{build_matrix, MatrixKind};
use crate::numfmt::format_significant_trimmed;

/// Round-off clamp: Laplacian-family eigenvalues in `(-CLAMP, 0)` snap to 0.
const CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    Ascending,
    Descending,
}

impl MatrixKind {
    /// The order a spectrum of this matrix is reported in.
    pub fn sort_order(self) -> SortOrder {
        match self {
            MatrixKind::Adjacency => SortOrder::Descending,
            _ => SortOrder::Ascending,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DistanceError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("spectrum kinds differ: {0} vs {1}")]
    KindMismatch(MatrixKind, MatrixKind),
    #[error("k = {k} is outside 1..={max}")]
    InvalidK { k: usize, max: usize },
    #[error("graphs have different node counts ({0} vs {1})")]
    NodeCountMismatch(usize, usize),
    #[error("unreachable substitution value must be positive, got {0}")]
    InvalidUnreachableValue(f64),
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// Sorted eigenvalue sequence of one representation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    kind: MatrixKind,
    values: Vec<f64>,
}

impl Spectrum {
    /// Eigendecomposes the requested representation matrix of `g`, clamps
    /// Laplacian-family round-off and sorts per the kind's convention.
    pub fn compute(g: &Graph, kind: MatrixKind) -> Result<Self, EigenError> {
        let rep = build_matrix(g, kind);
        let values = eigen::eigenvalues(&rep.matrix)?;
        Ok(Self::from_values(kind, values))
    }

    /// Wraps raw eigenvalues: applies the round-off clamp for Laplacian
    /// kinds and sorts into the kind's declared order.
    pub fn from_values(kind: MatrixKind, mut values: Vec<f64>) -> Self {
        if matches!(kind, MatrixKind::Laplacian | MatrixKind::NormalizedLaplacian) {
            for v in &mut values {
                if v.abs() < CLAMP {
                    *v = 0.0;
                }
            }
        }
        sort_values(&mut values, kind.sort_order());
        Spectrum { kind, values }
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One CSV row: the kind label followed by the eigenvalues in declared
    /// order, 12 significant digits.
    pub fn to_csv_row(&self) -> String {
        let mut row = String::from(self.kind.label());
        for v in &self.values {
            row.push(',');
            row.push_str(&format_significant_trimmed(*v, 12));
        }
        row
    }
}

fn sort_values(values: &mut [f64], order: SortOrder) {
    match order {
        SortOrder::Ascending => values.sort_by(f64::total_cmp),
        SortOrder::Descending => values.sort_by(|a, b| f64::total_cmp(b, a)),
    }
}

/// Zero-pads the shorter spectrum to the longer one's length, re-sorting so
/// both sequences follow the kind's declared order.
pub fn pad_spectra(s1: &Spectrum, s2: &Spectrum) -> Result<(Spectrum, Spectrum), DistanceError> {
    if s1.kind != s2.kind {
        return Err(DistanceError::KindMismatch(s1.kind, s2.kind));
    }
    let target = s1.len().max(s2.len());
    let pad = |s: &Spectrum| {
        let mut values = s.values.clone();
        values.resize(target, 0.0);
        sort_values(&mut values, s.kind.sort_order());
        Spectrum { kind: s.kind, values }
    };
    Ok((pad(s1), pad(s2)))
}

/// Euclidean distance between two spectra of the same kind, optionally over
/// only the first `k` compared eigenvalues (largest k for adjacency,
/// smallest k for the Laplacians). Spectra of different lengths are
/// zero-padded first.
pub fn spectral_distance_between(
    s1: &Spectrum,
    s2: &Spectrum,
    k: Option<usize>,
) -> Result<f64, DistanceError> {
    if let Some(k) = k {
        let max = s1.len().min(s2.len());
        if k == 0 || k > max {
            return Err(DistanceError::InvalidK { k, max });
        }
    }
    let (a, b) = pad_spectra(s1, s2)?;
    let take = k.unwrap_or(a.len());
    let sum: f64 = a
        .values
        .iter()
        .zip(&b.values)
        .take(take)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(math::sqrt(sum))
}

/// Spectral distance between two graphs under the chosen representation
/// matrix. `k = None` compares the full (padded) spectra.
pub fn spectral_distance(
    g1: &Graph,
    g2: &Graph,
    kind: MatrixKind,
    k: Option<usize>,
) -> Result<f64, DistanceError> {
    if g1.node_count() == 0 || g2.node_count() == 0 {
        return Err(DistanceError::EmptyGraph);
    }
    let s1 = Spectrum::compute(g1, kind)?;
    let s2 = Spectrum::compute(g2, kind)?;
    spectral_distance_between(&s1, &s2, k)
}
