#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn paperrank_bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paperrank"))
        .current_dir(dir)
        .env_remove("PAPERRANK_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Column-normalizes a 0/1 matrix.
fn column_stochastic(mut m: DMatrix<f64>) -> DMatrix<f64> {
    for j in 0..m.ncols() {
        let f: f64 = m.column(j).sum();
        m.column_mut(j).unscale_mut(f);
    }
    m
}

/// `p (L + I) diag(f + 1)^-1 + (1 - p)/N e e^T`, assembled from the edges.
pub fn dense_damped(n: usize, edges: &[(usize, usize)], p: f64) -> DMatrix<f64> {
    let mut l = DMatrix::<f64>::identity(n, n);
    for &(citing, cited) in edges {
        if citing != cited {
            l[(cited, citing)] = 1.0;
        }
    }
    column_stochastic(l) * p + DMatrix::from_element(n, n, (1.0 - p) / n as f64)
}

/// Augmented dummy-paper matrix, dummy at index 0.
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
    column_stochastic(l)
}

/// Direct solve of `(M - I) v = 0` with `sum(v) = 1`.
pub fn stationary(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = m - DMatrix::<f64>::identity(n, n);
    a.row_mut(n - 1).fill(1.0);
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    a.lu().solve(&b).expect("nonsingular").iter().copied().collect()
}

/// Random digraph on `2..=max_n` nodes with at least `min_edges` proper
/// citations; densities range from nearly empty to dense.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, min_edges: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.random_range(2..=max_n);
    let density: f64 = rng.random_range(0.0..0.4);
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if i != j && rng.random_bool(density) {
                edges.push((j, i));
            }
        }
    }
    while edges.len() < min_edges {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        edges.push((a, b));
    }
    (n, edges)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
