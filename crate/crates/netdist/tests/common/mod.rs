//! Shared test support for the driver crate: seeded generators, fixture
//! writing, CLI invocation, and eigenvalue oracles that are independent of
//! the production Householder + QL path.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Output;

use netdist_core::{make_rng, Graph, Matrix, PruneRng};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn seeded(seed: u64) -> PruneRng {
    make_rng(seed)
}

/// Random graph with exactly `m` edges on `n` nodes.
pub fn random_graph_nm(rng: &mut PruneRng, n: usize, m: usize) -> Graph {
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

/// Erdos-Renyi style G(n, p).
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

/// All labeled graphs on `n` nodes.
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

/// Writes a graph as a comma edge list and returns the path.
pub fn write_fixture(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let path = dir.join(name);
    netdist::io::write_edge_list(g, &path, ',').unwrap();
    path
}

/// Runs the `netdist` binary with the given arguments.
pub fn run_cli(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_netdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

// ---------------------------------------------------------------------------
// Eigenvalue oracles (duplicated from the core crate's test support so the
// acceptance suite stays self-contained)
// ---------------------------------------------------------------------------

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
    let mut acc = 1.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative_monic(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    (1..n).map(|k| k as f64 * coeffs[k] / n as f64).collect()
}

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
    for w in breakpoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (poly_eval(coeffs, a), poly_eval(coeffs, b));
        if fa == 0.0 && a > -bound {
            continue;
        }
        if fa * fb < 0.0 {
            roots.push(bisect(coeffs, a, b));
        }
    }
    let mut i = 0;
    while i < crit.len() {
        let c = crit[i];
        let mut mult_in_deriv = 1;
        while i + 1 < crit.len() && (crit[i + 1] - c).abs() < 1e-7 {
            mult_in_deriv += 1;
            i += 1;
        }
        if poly_eval(coeffs, c).abs() < 1e-7 {
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

/// Eigenvalues via the characteristic polynomial (intended for n <= 4).
pub fn charpoly_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.order();
    if n == 0 {
        return Vec::new();
    }
    let coeffs = characteristic_polynomial(m);
    let bound = (0..n)
        .map(|i| m.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    real_roots(&coeffs, bound.max(1.0))
}

/// Eigenvalues by cyclic Jacobi rotations.
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
