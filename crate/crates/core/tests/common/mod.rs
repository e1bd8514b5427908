//! Dense reference matrices built straight from an edge list, independent of
//! the sparse operators under test.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense `S = (L + I) diag(f + 1)^-1`.
pub fn dense_s(n: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::<f64>::identity(n, n);
    for &(citing, cited) in edges {
        if citing != cited {
            l[(cited, citing)] = 1.0;
        }
    }
    for j in 0..n {
        let f: f64 = l.column(j).sum();
        for i in 0..n {
            l[(i, j)] /= f;
        }
    }
    l
}

/// Dense `S(p) = p S + (1 - p)/N e e^T`.
pub fn dense_damped(n: usize, edges: &[(usize, usize)], p: f64) -> DMatrix<f64> {
    dense_s(n, edges) * p + DMatrix::from_element(n, n, (1.0 - p) / n as f64)
}

/// Dense dummy-paper matrix of order `N + 1`, dummy at index 0.
pub fn dense_dummy(n: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::<f64>::zeros(n + 1, n + 1);
    for k in 1..=n {
        l[(0, k)] = 1.0;
        l[(k, 0)] = 1.0;
    }
    for &(citing, cited) in edges {
        if citing != cited {
            l[(cited + 1, citing + 1)] = 1.0;
        }
    }
    for j in 0..=n {
        let f: f64 = l.column(j).sum();
        for i in 0..=n {
            l[(i, j)] /= f;
        }
    }
    l
}

/// Solves `(M - I) v = 0, sum(v) = 1` by LU with one equation replaced by
/// the normalization row. Valid when the eigenvalue 1 of `M` is simple.
pub fn stationary(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = m - DMatrix::<f64>::identity(n, n);
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let v = a.lu().solve(&b).expect("stationary system is nonsingular");
    v.iter().copied().collect()
}

/// Random directed graph on `2..=max_n` papers; may contain self-loops and
/// duplicates so that the builder's normalization is exercised.
pub fn random_graph(seed: u64, max_n: usize, min_edges: usize) -> (usize, Vec<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n);
    let density: f64 = rng.random_range(0.02..0.5);
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if rng.random_bool(density) {
                edges.push((j, i));
            }
        }
    }
    while edges.iter().filter(|(a, b)| a != b).count() < min_edges {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        edges.push((a, b));
    }
    (n, edges)
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
