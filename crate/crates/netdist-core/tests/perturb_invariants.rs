mod common;

use common::{random_graph, seeded};
use netdist_core::{
    isolate_random_nodes, prune, remove_random_edges, Graph, PruneMode, PruneSpec,
};
use proptest::prelude::*;

fn k4() -> Graph {
    let mut g = Graph::new("k4");
    for i in 0..4 {
        g.add_node(&i.to_string());
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            g.add_edge_indexed(i, j).unwrap();
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Both modes keep every node in place.
    #[test]
    fn node_count_is_invariant(
        seed in any::<u64>(), n in 2usize..32, p in 0.1f64..0.6, fraction in 0.01f64..1.0
    ) {
        let g = random_graph(&mut seeded(seed), n, p);
        if g.edge_count() == 0 {
            return Ok(());
        }
        for mode in [PruneMode::EdgeRemoval, PruneMode::NodeIsolation] {
            let spec = PruneSpec::new(mode, fraction, seed ^ 1).unwrap();
            if let Ok(res) = prune(&g, &spec) {
                prop_assert_eq!(res.pruned.node_count(), g.node_count());
                prop_assert_eq!(res.pruned.node_ids(), g.node_ids());
            }
        }
    }

    /// Edge removal deletes exactly round-half-up(f * m) edges.
    #[test]
    fn edge_removal_count_is_exact(
        seed in any::<u64>(), n in 2usize..32, p in 0.1f64..0.7, fraction in 0.01f64..=1.0
    ) {
        let g = random_graph(&mut seeded(seed), n, p);
        let m = g.edge_count();
        if m == 0 {
            return Ok(());
        }
        let expected = ((fraction * m as f64 + 0.5) as usize).max(1);
        let spec = PruneSpec::new(PruneMode::EdgeRemoval, fraction, seed).unwrap();
        if expected <= m {
            let res = remove_random_edges(&g, &spec).unwrap();
            prop_assert_eq!(res.pruned.edge_count(), m - expected);
            prop_assert_eq!(res.removed_edges.len(), expected);
        }
    }

    /// Every selected node ends at degree 0 and the degree losses add up to
    /// twice the removed edge count.
    #[test]
    fn isolation_zeroes_selected_degrees(
        seed in any::<u64>(), n in 2usize..32, p in 0.1f64..0.7, fraction in 0.01f64..0.5
    ) {
        let g = random_graph(&mut seeded(seed), n, p);
        if g.edge_count() == 0 {
            return Ok(());
        }
        let spec = PruneSpec::new(PruneMode::NodeIsolation, fraction, seed ^ 7).unwrap();
        let Ok(res) = isolate_random_nodes(&g, &spec) else { return Ok(()); };
        for id in &res.isolated_nodes {
            prop_assert_eq!(res.pruned.degree(id).unwrap(), 0);
        }
        let loss: usize = (0..n)
            .map(|i| g.degree_of(i) - res.pruned.degree_of(i))
            .sum();
        prop_assert_eq!(loss, 2 * res.removed_edges.len());
        prop_assert_eq!(res.pruned.edge_count(), g.edge_count() - res.removed_edges.len());
    }

    /// Pruning the remainder again can only lose more edges than one pass.
    #[test]
    fn sequential_pruning_composes(
        seed in any::<u64>(), n in 3usize..24, f1 in 0.05f64..0.5, f2 in 0.05f64..0.5
    ) {
        let g = random_graph(&mut seeded(seed), n, 0.5);
        if g.edge_count() < 4 {
            return Ok(());
        }
        let spec1 = PruneSpec::new(PruneMode::EdgeRemoval, f1, seed).unwrap();
        let once = remove_random_edges(&g, &spec1).unwrap();
        if once.pruned.edge_count() == 0 {
            return Ok(());
        }
        let spec2 = PruneSpec::new(PruneMode::EdgeRemoval, f2, seed ^ 3).unwrap();
        let twice = remove_random_edges(&once.pruned, &spec2).unwrap();
        prop_assert!(twice.pruned.edge_count() < once.pruned.edge_count());
    }

    /// Identical specs give identical results; different seeds diverge on
    /// graphs with enough edges to tell.
    #[test]
    fn determinism_per_seed(seed in any::<u64>(), n in 4usize..24) {
        let g = random_graph(&mut seeded(seed), n, 0.5);
        if g.edge_count() < 8 {
            return Ok(());
        }
        let spec = PruneSpec::new(PruneMode::EdgeRemoval, 0.25, seed).unwrap();
        let a = remove_random_edges(&g, &spec).unwrap();
        let b = remove_random_edges(&g, &spec).unwrap();
        prop_assert_eq!(&a.removed_edges, &b.removed_edges);
        prop_assert!(a.pruned.structural_eq(&b.pruned));
    }
}

#[test]
fn single_edge_removal_is_uniform_over_k4() {
    // 10k single-edge prunes: each of the 6 edges within 1/6 +- 0.02
    let g = k4();
    let mut counts = std::collections::BTreeMap::new();
    for seed in 0..10_000u64 {
        let spec = PruneSpec::new(PruneMode::EdgeRemoval, 0.1, seed).unwrap();
        let res = remove_random_edges(&g, &spec).unwrap();
        assert_eq!(res.removed_edges.len(), 1);
        *counts.entry(res.removed_edges[0].clone()).or_insert(0usize) += 1;
    }
    assert_eq!(counts.len(), 6);
    for (edge, count) in counts {
        let freq = count as f64 / 10_000.0;
        assert!(
            (freq - 1.0 / 6.0).abs() <= 0.02,
            "edge {edge:?} drawn with frequency {freq}"
        );
    }
}

#[test]
fn node_choice_is_roughly_uniform() {
    let g = random_graph(&mut seeded(5), 10, 0.5);
    let eligible: Vec<String> = (0..10)
        .filter(|&i| !g.is_isolate(i))
        .map(|i| g.node_id(i).to_string())
        .collect();
    let mut counts = std::collections::BTreeMap::new();
    for seed in 0..5000u64 {
        let spec = PruneSpec::new(PruneMode::NodeIsolation, 0.05, seed).unwrap();
        let res = isolate_random_nodes(&g, &spec).unwrap();
        assert_eq!(res.isolated_nodes.len(), 1);
        *counts.entry(res.isolated_nodes[0].clone()).or_insert(0usize) += 1;
    }
    let expect = 1.0 / eligible.len() as f64;
    for id in eligible {
        let freq = *counts.get(&id).unwrap_or(&0) as f64 / 5000.0;
        assert!((freq - expect).abs() < 0.05, "node {id}: {freq}");
    }
}
