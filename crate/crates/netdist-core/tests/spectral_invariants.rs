mod common;

use common::{random_connected_graph, random_graph, seeded};
use netdist_core::{
    build_matrix, spectral_distance, MatrixKind, Spectrum,
};
use proptest::prelude::*;

const KINDS: [MatrixKind; 3] = [
    MatrixKind::Adjacency,
    MatrixKind::Laplacian,
    MatrixKind::NormalizedLaplacian,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Laplacian nullity counts connected components.
    #[test]
    fn laplacian_zero_multiplicity_is_component_count(
        seed in any::<u64>(), n in 1usize..=64, p in 0.0f64..0.15
    ) {
        let g = random_graph(&mut seeded(seed), n, p);
        let spectrum = Spectrum::compute(&g, MatrixKind::Laplacian).unwrap();
        let zeros = spectrum.values().iter().filter(|v| v.abs() < 1e-6).count();
        prop_assert_eq!(zeros, g.component_indices().len());
    }

    /// Normalised Laplacian eigenvalues live in [0, 2].
    #[test]
    fn normalized_laplacian_range(seed in any::<u64>(), n in 1usize..48, p in 0.0f64..0.4) {
        let g = random_graph(&mut seeded(seed), n, p);
        let spectrum = Spectrum::compute(&g, MatrixKind::NormalizedLaplacian).unwrap();
        for &v in spectrum.values() {
            prop_assert!((-1e-9..=2.0 + 1e-9).contains(&v), "out of range: {}", v);
        }
    }

    /// Laplacian eigenvalues are non-negative and start at zero.
    #[test]
    fn laplacian_nonnegative(seed in any::<u64>(), n in 1usize..48, p in 0.0f64..0.4) {
        let g = random_graph(&mut seeded(seed), n, p);
        let spectrum = Spectrum::compute(&g, MatrixKind::Laplacian).unwrap();
        prop_assert_eq!(spectrum.values()[0], 0.0);
        for &v in spectrum.values() {
            prop_assert!(v >= -1e-9);
        }
    }

    /// Spectral radius bracketed by average and maximum degree.
    #[test]
    fn adjacency_radius_bounds(seed in any::<u64>(), n in 2usize..48, extra in 0.0f64..0.3) {
        let g = random_connected_graph(&mut seeded(seed), n, extra);
        let spectrum = Spectrum::compute(&g, MatrixKind::Adjacency).unwrap();
        let radius = spectrum.values()[0];
        let avg_degree = 2.0 * g.edge_count() as f64 / n as f64;
        prop_assert!(radius >= avg_degree - 1e-6, "{} < {}", radius, avg_degree);
        prop_assert!(radius <= g.max_degree() as f64 + 1e-6);
    }

    /// Pseudometric floor and exact symmetry in the graph arguments.
    #[test]
    fn distance_floor_and_symmetry(
        seed1 in any::<u64>(), seed2 in any::<u64>(), n in 1usize..24, p in 0.0f64..0.5
    ) {
        let g1 = random_graph(&mut seeded(seed1), n, p);
        let g2 = random_graph(&mut seeded(seed2), n, p);
        for kind in KINDS {
            prop_assert_eq!(spectral_distance(&g1, &g1, kind, None).unwrap(), 0.0);
            let ab = spectral_distance(&g1, &g2, kind, None).unwrap();
            let ba = spectral_distance(&g2, &g1, kind, None).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12);
            prop_assert!(ab >= 0.0);
        }
    }

    /// Padding makes differently-sized graphs comparable for every kind.
    #[test]
    fn padded_comparison_is_finite(
        seed in any::<u64>(), n1 in 1usize..16, n2 in 1usize..16, p in 0.0f64..0.5
    ) {
        let mut rng = seeded(seed);
        let g1 = random_graph(&mut rng, n1, p);
        let g2 = random_graph(&mut rng, n2, p);
        for kind in KINDS {
            let d = spectral_distance(&g1, &g2, kind, None).unwrap();
            prop_assert!(d.is_finite());
        }
    }
}

#[test]
fn representation_matrices_satisfy_declared_invariants() {
    let mut rng = seeded(31);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 20, 0.2);
        let lap = build_matrix(&g, MatrixKind::Laplacian).matrix;
        assert!(lap.is_symmetric(1e-12));
        for i in 0..20 {
            assert!(lap.row(i).iter().sum::<f64>().abs() < 1e-12);
        }
        let nl = build_matrix(&g, MatrixKind::NormalizedLaplacian).matrix;
        assert!(nl.is_symmetric(1e-12));
        for i in 0..20 {
            let d = nl.get(i, i);
            assert!(d == 0.0 || d == 1.0);
            assert_eq!(d == 0.0, g.is_isolate(i));
        }
    }
}
