//! Shared test support: graph generators and independent oracles.
//!
//! The oracles here deliberately avoid the library's Householder + QL path:
//! eigenvalues come from characteristic polynomials (n <= 4) or cyclic
//! Jacobi rotations, and component counts from union-find.

#![allow(dead_code)]

use netdist_core::{make_rng, Graph, Matrix, PruneRng};
use rand::Rng;

/// All labeled graphs on `n` nodes (ids `0..n-1`), enumerated over edge
/// subsets. 2^(n(n-1)/2) graphs, so keep `n` small.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut graphs = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let mut g = Graph::new(format!("n{n}_mask{mask}"));
        for i in 0..n {
            g.add_node(&i.to_string());
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                g.add_edge_indexed(i, j).unwrap();
            }
        }
        graphs.push(g);
    }
    graphs
}

/// Erdos-Renyi style G(n, p) graph from a seeded stream.
pub fn random_graph(rng: &mut PruneRng, n: usize, edge_prob: f64) -> Graph {
    let mut g = Graph::new(format!("gnp{n}"));
    for i in 0..n {
        g.add_node(&i.to_string());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < edge_prob {
                g.add_edge_indexed(i, j).unwrap();
            }
        }
    }
    g
}

/// Random graph with exactly `m` edges (must fit: m <= n(n-1)/2).
pub fn random_graph_nm(rng: &mut PruneRng, n: usize, m: usize) -> Graph {
    use rand::seq::SliceRandom;
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    assert!(m <= pairs.len());
    pairs.shuffle(rng);
    let mut g = Graph::new(format!("gnm{n}_{m}"));
    for i in 0..n {
        g.add_node(&i.to_string());
    }
    for &(i, j) in pairs.iter().take(m) {
        g.add_edge_indexed(i, j).unwrap();
    }
    g
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut PruneRng, n: usize, extra_prob: f64) -> Graph {
    let mut g = Graph::new(format!("conn{n}"));
    for i in 0..n {
        g.add_node(&i.to_string());
    }
    for i in 1..n {
        let parent = rng.random_range(0..i);
        g.add_edge_indexed(parent, i).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) && rng.random::<f64>() < extra_prob {
                g.add_edge_indexed(i, j).unwrap();
            }
        }
    }
    g
}

pub fn seeded(seed: u64) -> PruneRng {
    make_rng(seed)
}

/// Union-find component count, an oracle independent of the BFS path.
pub fn union_find_components(g: &Graph) -> usize {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, j) in g.edges() {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    (0..n)
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

// ---------------------------------------------------------------------------
// Characteristic-polynomial eigenvalue oracle (n <= 4)
// ---------------------------------------------------------------------------

/// Monic characteristic polynomial coefficients of a square matrix by the
/// Faddeev-LeVerrier recurrence: returns `c` with
/// `p(x) = x^n + c[n-1] x^(n-1) + ... + c[0]`.
fn characteristic_polynomial(m: &Matrix) -> Vec<f64> {
    let n = m.order();
    let mut coeffs = vec![0.0; n];
    let mut work = Matrix::identity(n);
    for k in 1..=n {
        work = m.mul(&work);
        let trace: f64 = (0..n).map(|i| work.get(i, i)).sum();
        let c = -trace / k as f64;
        coeffs[n - k] = c;
        for i in 0..n {
            work.set(i, i, work.get(i, i) + c);
        }
    }
    coeffs
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    // monic of degree coeffs.len()
    let mut acc = 1.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Derivative of a monic polynomial, renormalised to monic form.
fn poly_derivative_monic(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    // p'(x) = n x^(n-1) + sum_{k>=1} k c[k] x^(k-1); divide by n to stay monic
    (1..n).map(|k| k as f64 * coeffs[k] / n as f64).collect()
}

/// All real roots (with multiplicity) of a monic polynomial known to have
/// only real roots, searched within `[-bound, bound]`. Returns ascending.
fn real_roots(coeffs: &[f64], bound: f64) -> Vec<f64> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-coeffs[0]];
    }
    let crit = real_roots(&poly_derivative_monic(coeffs), bound);

    let mut breakpoints = vec![-bound - 1.0];
    for &c in &crit {
        if breakpoints.last().is_none_or(|&b| c > b + 1e-12) {
            breakpoints.push(c);
        }
    }
    breakpoints.push(bound + 1.0);

    let mut roots = Vec::new();
    // simple roots: sign change across an interval between critical points
    for w in breakpoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (poly_eval(coeffs, a), poly_eval(coeffs, b));
        if fa == 0.0 && a > -bound {
            continue; // breakpoint roots are credited below
        }
        if fa * fb < 0.0 {
            roots.push(bisect(coeffs, a, b));
        }
    }
    // multiple roots: critical points where p vanishes; a root of p' with
    // multiplicity k there means multiplicity k+1 in p
    let mut i = 0;
    while i < crit.len() {
        let c = crit[i];
        let mut mult_in_deriv = 1;
        while i + 1 < crit.len() && (crit[i + 1] - c).abs() < 1e-7 {
            mult_in_deriv += 1;
            i += 1;
        }
        if poly_eval(coeffs, c).abs() < 1e-7 {
            // drop bisection hits near c: for odd multiplicity the sign
            // change exists but the plateau around a multiple root makes
            // bisection land up to ~1e-5 off, so the window is generous
            roots.retain(|&r: &f64| (r - c).abs() > 1e-4);
            for _ in 0..=mult_in_deriv {
                roots.push(c);
            }
        }
        i += 1;
    }
    roots.sort_by(f64::total_cmp);
    assert_eq!(roots.len(), n, "root count mismatch for {coeffs:?}: {roots:?}");
    roots
}

fn bisect(coeffs: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = poly_eval(coeffs, a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = poly_eval(coeffs, mid);
        if fm == 0.0 || (b - a) < 1e-14 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Eigenvalues (ascending, with multiplicity) via the characteristic
/// polynomial. Intended for matrices of order <= 4; the root search relies
/// on the clear eigenvalue separation small 0/1 graph matrices have.
pub fn charpoly_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.order();
    if n == 0 {
        return Vec::new();
    }
    let coeffs = characteristic_polynomial(m);
    // Gershgorin bound
    let bound = (0..n)
        .map(|i| m.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    real_roots(&coeffs, bound.max(1.0))
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigenvalue oracle
// ---------------------------------------------------------------------------

/// Eigenvalues (ascending) by cyclic Jacobi rotations. Slow but entirely
/// independent of the tridiagonalization + QL production path.
pub fn jacobi_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.order();
    if n == 0 {
        return Vec::new();
    }
    let mut a = m.clone();
    let scale = a
        .entries()
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.get(i, j) * a.get(i, j);
            }
        }
        if off.sqrt() <= 1e-12 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Mean-and-population-sigma by direct summation (aggregation oracle).
pub fn naive_mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
