//! Symmetric eigendecomposition: Householder tridiagonalization followed by
//! implicit-shift QL iteration.
//!
//! Implemented in-repo so spectra are reproducible bit-for-bit across
//! platforms at the documented tolerance, rather than depending on whatever
//! LAPACK happens to be linked.

// index loops mirror the matrix algebra
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::math;
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EigenError {
    #[error("matrix is not symmetric (max deviation {max_deviation:e})")]
    NotSymmetric { max_deviation: f64 },
    #[error("QL iteration failed to converge within {max_sweeps} sweeps")]
    NoConvergence { max_sweeps: usize },
}

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors
/// as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// All eigenvalues of a symmetric matrix, ascending. Skips the eigenvector
/// accumulation, which roughly halves the work of [`symmetric_eigen`].
pub fn eigenvalues(m: &Matrix) -> Result<Vec<f64>, EigenError> {
    let (values, _) = decompose(m, false)?;
    Ok(values)
}

/// Full decomposition `A = V diag(values) Vᵀ`.
pub fn symmetric_eigen(m: &Matrix) -> Result<SymmetricEigen, EigenError> {
    let (values, vectors) = decompose(m, true)?;
    Ok(SymmetricEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

fn decompose(m: &Matrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Matrix>), EigenError> {
    check_symmetric(m)?;
    let n = m.order();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| Matrix::zeros(0))));
    }

    let mut work = m.clone();
    let mut q = want_vectors.then(|| Matrix::identity(n));
    let (mut d, mut e) = tridiagonalize(&mut work, q.as_mut());
    ql_implicit(&mut d, &mut e, q.as_mut(), 50 * n)?;

    // sort ascending, permuting eigenvector columns alongside
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = q.map(|q| {
        let mut sorted = Matrix::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                sorted.set(r, new_col, q.get(r, old_col));
            }
        }
        sorted
    });
    Ok((values, vectors))
}

fn check_symmetric(m: &Matrix) -> Result<(), EigenError> {
    let n = m.order();
    let mut max_dev = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dev = (m.get(i, j) - m.get(j, i)).abs();
            if dev > max_dev {
                max_dev = dev;
            }
        }
    }
    if max_dev > 1e-9 {
        return Err(EigenError::NotSymmetric { max_deviation: max_dev });
    }
    Ok(())
}

/// Householder reduction of the symmetric matrix `a` to tridiagonal form.
/// Returns the diagonal `d` and the off-diagonal `e` (`e[i]` couples `i` and
/// `i + 1`; `e[n-1]` is 0). When `q` is given it accumulates the orthogonal
/// transform, so `a_input = Q T Qᵀ`.
fn tridiagonalize(a: &mut Matrix, mut q: Option<&mut Matrix>) -> (Vec<f64>, Vec<f64>) {
    let n = a.order();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        // Householder vector annihilating column k below the subdiagonal
        let mut norm2 = 0.0;
        for i in (k + 1)..n {
            let x = a.get(i, k);
            v[i] = x;
            norm2 += x * x;
        }
        let sub = v[k + 1];
        if norm2 == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let alpha = if sub >= 0.0 {
            -math::sqrt(norm2)
        } else {
            math::sqrt(norm2)
        };
        e[k] = alpha;
        v[k + 1] -= alpha;
        let vnorm2 = norm2 - 2.0 * alpha * sub + alpha * alpha;
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // symmetric rank-2 update: A <- A - v wᵀ - w vᵀ on the trailing block,
        // with p = beta A v and w = p - (beta/2)(vᵀp) v
        for i in (k + 1)..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += a.get(i, j) * v[j];
            }
            p[i] = beta * s;
        }
        let mut vtp = 0.0;
        for i in (k + 1)..n {
            vtp += v[i] * p[i];
        }
        let half = 0.5 * beta * vtp;
        for i in (k + 1)..n {
            p[i] -= half * v[i];
        }
        for i in (k + 1)..n {
            let vi = v[i];
            let wi = p[i];
            for j in (k + 1)..=i {
                let upd = a.get(i, j) - vi * p[j] - wi * v[j];
                a.set(i, j, upd);
                a.set(j, i, upd);
            }
        }
        a.set(k + 1, k, alpha);
        a.set(k, k + 1, alpha);
        for i in (k + 2)..n {
            a.set(i, k, 0.0);
            a.set(k, i, 0.0);
        }

        // Q <- Q (I - beta v vᵀ)
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let mut s = 0.0;
                for c in (k + 1)..n {
                    s += q.get(r, c) * v[c];
                }
                let s = beta * s;
                for c in (k + 1)..n {
                    let upd = q.get(r, c) - s * v[c];
                    q.set(r, c, upd);
                }
            }
        }
    }

    for i in 0..n {
        d[i] = a.get(i, i);
    }
    if n >= 2 {
        e[n - 2] = a.get(n - 1, n - 2);
    }
    e[n - 1] = 0.0;
    (d, e)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
/// Rotations are applied to the columns of `q` when given. Each shift-and
/// -sweep counts against `max_sweeps`.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut q: Option<&mut Matrix>,
    max_sweeps: usize,
) -> Result<(), EigenError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let mut shift_total = 0.0;
    let mut tst1 = 0.0f64;
    let mut sweeps = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        loop {
            // first negligible off-diagonal at or after l
            let mut m = l;
            while m < n - 1 && e[m].abs() > eps * tst1 {
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > max_sweeps {
                return Err(EigenError::NoConvergence { max_sweeps });
            }

            // implicit shift from the leading 2x2
            let g = d[l];
            let p0 = (d[l + 1] - g) / (2.0 * e[l]);
            let mut r = math::hypot(p0, 1.0);
            if p0 < 0.0 {
                r = -r;
            }
            d[l] = e[l] / (p0 + r);
            d[l + 1] = e[l] * (p0 + r);
            let dl1 = d[l + 1];
            let h = g - d[l];
            for item in d.iter_mut().take(n).skip(l + 2) {
                *item -= h;
            }
            shift_total += h;

            // QL sweep from m-1 down to l
            let mut p = d[m];
            let mut c = 1.0;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = e[l + 1];
            let mut s = 0.0;
            let mut s2 = 0.0;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let g = c * e[i];
                let h = c * p;
                r = math::hypot(p, e[i]);
                e[i + 1] = s * r;
                s = e[i] / r;
                c = p / r;
                p = c * d[i] - s * g;
                d[i + 1] = h + s * (c * g + s * d[i]);

                if let Some(q) = q.as_deref_mut() {
                    for k in 0..n {
                        let h = q.get(k, i + 1);
                        q.set(k, i + 1, s * q.get(k, i) + c * h);
                        q.set(k, i, c * q.get(k, i) - s * h);
                    }
                }
            }
            p = -s * s2 * c3 * el1 * e[l] / dl1;
            e[l] = s * p;
            d[l] = c * p;

            if e[l].abs() <= eps * tst1 {
                break;
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
    Ok(())
}
