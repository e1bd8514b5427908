//! Row-parallel application of `S`.
//!
//! Each row of `S x` is an independent fixed-order sum, so splitting rows
//! across workers yields the same bits as the serial operator for any
//! worker count. Reductions in the power iteration stay serial.

use paperrank_core::ranking::StochasticOperator;
use paperrank_core::{CitationGraph, LinearOperator};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const THREADS_ENV: &str = "PAPERRANK_THREADS";

const MIN_ROWS_PER_TASK: usize = 512;

/// Worker cap from `PAPERRANK_THREADS`; unset or `0` means serial.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) if !raw.trim().is_empty() => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a nonnegative integer, got `{raw}`"))),
        _ => Ok(0),
    }
}

pub struct ParallelStochastic<'g> {
    inner: StochasticOperator<'g>,
    pool: rayon::ThreadPool,
}

impl<'g> ParallelStochastic<'g> {
    pub fn new(graph: &'g CitationGraph, threads: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {threads} workers: {e}")))?;
        Ok(ParallelStochastic { inner: StochasticOperator::new(graph), pool })
    }
}

impl LinearOperator for ParallelStochastic<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut shares = vec![0.0; x.len()];
        self.inner.column_shares(x, &mut shares);
        let inner = &self.inner;
        self.pool.install(|| {
            y.par_iter_mut()
                .with_min_len(MIN_ROWS_PER_TASK)
                .enumerate()
                .for_each(|(i, yi)| *yi = inner.row(i, &shares));
        });
    }
}

/// `S` as a trait object: serial for `threads == 0`, row-parallel otherwise.
pub fn stochastic_operator(graph: &CitationGraph, threads: usize) -> Result<Box<dyn LinearOperator + '_>> {
    if threads == 0 {
        Ok(Box::new(StochasticOperator::new(graph)))
    } else {
        Ok(Box::new(ParallelStochastic::new(graph, threads)?))
    }
}
