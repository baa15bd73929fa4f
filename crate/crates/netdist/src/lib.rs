//! File formats, experiment configuration, and the pruning experiment
//! driver on top of [`netdist_core`].
//!
//! The core crate carries the graph model and every distance computation;
//! this crate adds what needs an operating system: loaders for edge lists
//! and matrix files, the flat key-value experiment config, the replicated
//! pruning harness with CSV/JSON persistence, and the `netdist` binary.

pub mod config;
pub mod harness;
pub mod io;

pub use config::{default_fractions, fraction_grid, ConfigError, ExperimentConfig, NetworkEntry};
pub use harness::{
    aggregate, derive_seed, parse_records_csv, read_records_csv, records_to_csv, records_to_json,
    run_experiment, write_records_csv, write_records_json, ExperimentOutcome, ExperimentRecord,
    HarnessError, MetricKind, NetworkSummary,
};
pub use io::{
    load_adjacency_matrix, load_edge_list, load_graph, parse_adjacency_matrix, parse_edge_list,
    parse_two_mode, project_two_mode, write_edge_list, GraphFormat, LoadError, Loaded,
};

pub use netdist_core as core;
