//! Paper scoring.
//!
//! Every model here is built on the self-loop-augmented scaling
//! `S = (L + I) diag(f + 1)^-1`: column `j` spreads a unit of weight evenly
//! over the papers `j` cites and over `j` itself, so `S` is column-stochastic
//! while keeping whatever block structure `L` has.
//!
//! - [`normalized_citations`] is `S e`, a one-step local heuristic.
//! - [`paperrank`] is the stationary vector of the damped matrix
//!   `S(p) = p S + (1 - p)/N e e^T`, found by power iteration. The rank-one
//!   term is applied as `((1 - p)/N)(e^T x) e` and never stored.
//! - [`dummy_paperrank`] is the competing model that adds a paper citing and
//!   cited by every other one; it runs undamped.

use alloc::vec;
use alloc::vec::Vec;

use crate::citegraph::{CitationGraph, PaperId};
use crate::error::{Error, Result};

/// Probability of following a reference rather than jumping to a uniformly
/// random paper.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DampingParam(f64);

impl DampingParam {
    pub const DEFAULT: DampingParam = DampingParam(0.99);

    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(DampingParam(p))
        } else {
            Err(Error::InvalidDamping(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for DampingParam {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Default 1-norm residual tolerance for power iteration.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration budget for the undamped dummy-paper model.
pub const DUMMY_DEFAULT_MAX_ITER: usize = 100_000;

/// `10 * ceil(log(tol) / log(p))`: ten times the number of steps a
/// contraction with rate `p` needs to shrink an O(1) error below `tol`.
pub fn default_max_iter(tol: f64, p: DampingParam) -> usize {
    let steps = libm::ceil(libm::log(tol) / libm::log(p.value()));
    if steps.is_finite() && steps >= 1.0 {
        10 * steps as usize
    } else {
        10
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Entries sum to one.
    SumToOne,
    /// Divided by the maximum entry, which becomes exactly one.
    UnitInterval,
    Raw,
}

/// Nonnegative per-paper scores together with their scaling convention.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    scores: Vec<f64>,
    normalization: Normalization,
}

impl RankVector {
    pub fn new(scores: Vec<f64>, normalization: Normalization) -> Self {
        RankVector { scores, normalization }
    }

    pub fn raw(scores: Vec<f64>) -> Self {
        Self::new(scores, Normalization::Raw)
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn into_scores(self) -> Vec<f64> {
        self.scores
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.scores.iter().sum()
    }
}

/// Outcome of a power iteration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub iterations: usize,
    /// `||A x - x||_1` for the last iterate `x` fed to the operator. The
    /// returned vector is one application further along, so its own residual
    /// is no larger than this for the contractions used here.
    pub final_residual: f64,
    pub converged: bool,
}

/// A square linear map applied as `y = A x`.
///
/// Implementations must write every entry of `y` and produce the same bits
/// for the same `x`.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// The column-stochastic matrix `S` with the implicit self-citation.
///
/// Applied row-wise: `(S x)_i = x_i/f_i + sum over j citing i of x_j/f_j`,
/// where `f_j` counts paper `j`'s references plus itself. Each row is summed
/// in a fixed order (own share first, then citing papers ascending), so the
/// rows can be computed independently without changing any bit.
#[derive(Debug, Clone)]
pub struct StochasticOperator<'g> {
    graph: &'g CitationGraph,
    inv_refs: Vec<f64>,
}

impl<'g> StochasticOperator<'g> {
    pub fn new(graph: &'g CitationGraph) -> Self {
        let inv_refs = graph
            .reference_counts(true)
            .into_iter()
            .map(|f| 1.0 / f as f64)
            .collect();
        StochasticOperator { graph, inv_refs }
    }

    pub fn graph(&self) -> &'g CitationGraph {
        self.graph
    }

    /// Column shares `x_j / f_j`.
    pub fn column_shares(&self, x: &[f64], shares: &mut [f64]) {
        for ((s, &xj), &w) in shares.iter_mut().zip(x).zip(&self.inv_refs) {
            *s = xj * w;
        }
    }

    /// Row `i` of `S x` given the precomputed column shares.
    pub fn row(&self, i: usize, shares: &[f64]) -> f64 {
        let mut acc = shares[i];
        for &j in self.graph.cited_by(PaperId(i)) {
            acc += shares[j];
        }
        acc
    }
}

impl LinearOperator for StochasticOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n_papers()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut shares = vec![0.0; x.len()];
        self.column_shares(x, &mut shares);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i, &shares);
        }
    }
}

/// The augmented matrix of the dummy-paper model, of order `N + 1`.
///
/// Index 0 is the dummy paper: it cites every paper (share `1/N` each) and is
/// cited by every paper. Paper `j` (stored at index `j + 1`) spreads its unit
/// over its `f_j` references and the dummy, i.e. `1/(1 + f_j)` each, with `f`
/// counted without self-citations.
#[derive(Debug, Clone)]
pub struct DummyOperator<'g> {
    graph: &'g CitationGraph,
    inv_refs: Vec<f64>,
}

impl<'g> DummyOperator<'g> {
    pub fn new(graph: &'g CitationGraph) -> Self {
        let inv_refs = graph
            .reference_counts(false)
            .into_iter()
            .map(|f| 1.0 / (1 + f) as f64)
            .collect();
        DummyOperator { graph, inv_refs }
    }
}

impl LinearOperator for DummyOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n_papers() + 1
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.graph.n_papers();
        let shares: Vec<f64> = x[1..].iter().zip(&self.inv_refs).map(|(&xj, &w)| xj * w).collect();
        y[0] = shares.iter().sum();
        let from_dummy = x[0] / n as f64;
        for i in 0..n {
            let mut acc = from_dummy;
            for &j in self.graph.cited_by(PaperId(i)) {
                acc += shares[j];
            }
            y[i + 1] = acc;
        }
    }
}

fn validate_budget(tol: f64, max_iter: usize) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if max_iter == 0 {
        return Err(Error::InvalidMaxIter);
    }
    Ok(())
}

/// Power iteration for the dominant eigenvector of a column-stochastic
/// operator, optionally damped towards the uniform vector.
///
/// Starts from `e/N` and rescales each iterate to unit 1-norm. Stops as soon
/// as `||A x - x||_1 <= tol` or after `max_iter` applications.
pub fn power_iteration<O: LinearOperator + ?Sized>(
    op: &O,
    damping: Option<DampingParam>,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, ConvergenceReport)> {
    validate_budget(tol, max_iter)?;
    let n = op.dim();
    if n == 0 {
        let report = ConvergenceReport { iterations: 0, final_residual: 0.0, converged: true };
        return Ok((Vec::new(), report));
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut report = ConvergenceReport { iterations: 0, final_residual: f64::INFINITY, converged: false };
    for k in 1..=max_iter {
        op.apply(&x, &mut y);
        if let Some(p) = damping {
            let p = p.value();
            let mass: f64 = x.iter().sum();
            let jump = (1.0 - p) / n as f64 * mass;
            for yi in y.iter_mut() {
                *yi = p * *yi + jump;
            }
        }
        let residual: f64 = x.iter().zip(&y).map(|(a, b)| (b - a).abs()).sum();
        let total: f64 = y.iter().sum();
        for yi in y.iter_mut() {
            *yi /= total;
        }
        core::mem::swap(&mut x, &mut y);
        report.iterations = k;
        report.final_residual = residual;
        if residual <= tol {
            report.converged = true;
            break;
        }
    }
    Ok((x, report))
}

/// `S x` for the self-loop-augmented stochastic matrix.
///
/// Panics when `x.len()` differs from the number of papers.
pub fn stochastic_matvec(g: &CitationGraph, x: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), g.n_papers(), "vector length must equal the number of papers");
    let mut y = vec![0.0; x.len()];
    StochasticOperator::new(g).apply(x, &mut y);
    y
}

/// Normalized citations `S e`: every citation weighted by one over the
/// citing paper's reference count (self-citation included).
pub fn normalized_citations(g: &CitationGraph) -> RankVector {
    let e = vec![1.0; g.n_papers()];
    RankVector::raw(stochastic_matvec(g, &e))
}

/// Bare citation counts as a raw score vector.
pub fn bare_citation_scores(g: &CitationGraph) -> RankVector {
    RankVector::raw(g.bare_citations().into_iter().map(|c| c as f64).collect())
}

/// Damped PaperRank `v = S(p) v`, `sum(v) = 1`.
///
/// A run that exhausts `max_iter` still returns its last iterate; check
/// [`ConvergenceReport::converged`].
pub fn paperrank(
    g: &CitationGraph,
    p: DampingParam,
    tol: f64,
    max_iter: usize,
) -> Result<(RankVector, ConvergenceReport)> {
    paperrank_with(&StochasticOperator::new(g), p, tol, max_iter)
}

/// [`paperrank`] over any implementation of `S`, e.g. a multithreaded one.
pub fn paperrank_with<O: LinearOperator + ?Sized>(
    op: &O,
    p: DampingParam,
    tol: f64,
    max_iter: usize,
) -> Result<(RankVector, ConvergenceReport)> {
    let (v, report) = power_iteration(op, Some(p), tol, max_iter)?;
    Ok((RankVector::new(v, Normalization::SumToOne), report))
}

/// Stationary vector of the dummy-paper model, length `N + 1`, dummy first.
pub fn dummy_paperrank(g: &CitationGraph, tol: f64, max_iter: usize) -> Result<(RankVector, ConvergenceReport)> {
    if g.is_empty() {
        return Err(Error::EmptyCitationMatrix);
    }
    let (v, report) = power_iteration(&DummyOperator::new(g), None, tol, max_iter)?;
    Ok((RankVector::new(v, Normalization::SumToOne), report))
}

/// Drops the dummy entry (index 0) and rescales the rest to sum to one.
pub fn strip_dummy(v: &RankVector) -> Result<RankVector> {
    if v.len() < 2 {
        return Err(Error::TooShort { len: v.len(), min: 2 });
    }
    let rest = &v.scores()[1..];
    let total: f64 = rest.iter().sum();
    if total <= 0.0 {
        return Err(Error::AllZero);
    }
    Ok(RankVector::new(rest.iter().map(|s| s / total).collect(), Normalization::SumToOne))
}

/// First-order estimate of the damped vector from the undamped one:
/// `p v* + (1 - p)/N e`.
pub fn perturbation_estimate(v_star: &RankVector, p: DampingParam) -> Result<RankVector> {
    let n = v_star.len();
    if n == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    let sum = v_star.sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { sum });
    }
    let p = p.value();
    let jump = (1.0 - p) / n as f64;
    let est = v_star.scores().iter().map(|&s| p * s + jump).collect();
    Ok(RankVector::new(est, Normalization::SumToOne))
}

/// Scales by the maximum entry so the scores span `[0, 1]`.
pub fn to_unit_interval(v: &RankVector) -> Result<RankVector> {
    if v.is_empty() {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    let max = v.scores().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max <= 0.0 {
        return Err(Error::AllZero);
    }
    Ok(RankVector::new(v.scores().iter().map(|s| s / max).collect(), Normalization::UnitInterval))
}
