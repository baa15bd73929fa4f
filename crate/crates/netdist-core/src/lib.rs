//! Core algorithms for comparing a network against pruned copies of itself.
//!
//! The crate bundles everything needed to quantify how much a graph changes
//! when edges are dropped or nodes are cut off from their neighbourhoods:
//!
//! - an undirected simple [`Graph`] with stable node identifiers and the
//!   usual structural statistics ([`GraphProperties`]),
//! - dense representation matrices (adjacency, Laplacian, normalised
//!   Laplacian) with an in-house symmetric eigensolver, so spectra are
//!   reproducible bit-for-bit across platforms,
//! - spectral distances over those spectra and the DeltaCon family of
//!   affinity distances built on the fast-belief-propagation matrix,
//! - seeded pruning operators (random edge removal, node isolation) for
//!   Monte-Carlo missing-data experiments.
//!
//! All operations are pure functions of immutable inputs; graphs are safe to
//! share across threads once built. File formats, configuration, and the
//! experiment driver live in the companion `netdist` crate.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable default
//! features and enable `libm` instead.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("netdist-core requires either the `std` or the `libm` feature");

mod math;

pub mod affinity;
pub mod eigen;
pub mod graph;
pub mod matrix;
pub mod numfmt;
pub mod perturb;
pub mod properties;
pub mod spectrum;

pub use affinity::{
    deltacon_between, deltacon_similarity, edit_distance, fbp_matrix, fbp_series,
    root_euclidean_between, root_euclidean_distance, shortest_path_matrix_distance,
    AffinityError, AffinityMatrix,
};
pub use eigen::{eigenvalues, symmetric_eigen, EigenError, SymmetricEigen};
pub use graph::{project_incidence, Graph, GraphError};
pub use matrix::{build_matrix, Matrix, MatrixKind, RepresentationMatrix};
pub use perturb::{
    isolate_random_nodes, make_rng, prune, remove_random_edges, PruneError, PruneMode,
    PruneResult, PruneRng, PruneSpec,
};
pub use properties::{DegreeDistribution, GraphProperties, HopMatrix};
pub use spectrum::{
    pad_spectra, spectral_distance, spectral_distance_between, DistanceError, SortOrder, Spectrum,
};
