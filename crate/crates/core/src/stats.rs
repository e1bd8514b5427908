//! Correlation between two score vectors.
//!
//! Both functions return `None` when either input is constant (zero
//! variance) or shorter than two entries.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Pearson product-moment correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "correlated vectors must have equal length");
    let n = x.len();
    if n < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Ranks starting at 1, tied values sharing their average rank.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = avg;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation: Pearson on average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "correlated vectors must have equal length");
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Mean of `scores` over each group label `0..n_groups`. Empty groups give
/// `None`.
pub fn group_means(scores: &[f64], groups: &[usize], n_groups: usize) -> Vec<Option<f64>> {
    assert_eq!(scores.len(), groups.len(), "one group label per score");
    let mut sums = vec![0.0; n_groups];
    let mut counts = vec![0usize; n_groups];
    for (&s, &g) in scores.iter().zip(groups) {
        sums[g] += s;
        counts[g] += 1;
    }
    sums.into_iter()
        .zip(counts)
        .map(|(s, c)| (c > 0).then(|| s / c as f64))
        .collect()
}
