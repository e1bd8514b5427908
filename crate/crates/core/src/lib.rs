//! Citation-graph ranking without the standard library.
//!
//! The crate models a collection of `N` papers as a 0/1 citation matrix `L`
//! (`L[i][j] = 1` when paper `j` cites paper `i`) and offers:
//!
//! - [`citegraph`]: the immutable sparse graph with bare citation and
//!   reference counts.
//! - [`ranking`]: normalized citations, the damped random-reader PaperRank
//!   computed by power iteration, the rival dummy-paper model, the
//!   first-order damping estimate and `[0, 1]` display scaling.
//! - [`aggregate`]: author and journal ranks (optionally restricted to a
//!   window of years) that conserve the total paper score.
//! - [`synth`]: seeded block-model citation graphs, including the six
//!   reference experiments.
//! - [`stats`]: Pearson and Spearman correlation used to compare rankings.
//!
//! Everything here allocates through `alloc` only; file formats, the CLI and
//! the multithreaded operator live in the `paperrank` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aggregate;
pub mod citegraph;
mod error;
pub mod ranking;
pub mod stats;
pub mod synth;

pub use aggregate::{author_ranks, journal_ranks, AuthorRankTable, JournalRankTable, PaperMeta, TimeWindow};
pub use citegraph::{CitationGraph, PaperId};
pub use error::{Error, Result};
pub use ranking::{
    dummy_paperrank, normalized_citations, paperrank, perturbation_estimate, stochastic_matvec,
    strip_dummy, to_unit_interval, ConvergenceReport, DampingParam, LinearOperator, Normalization,
    RankVector,
};
pub use synth::{example_spec, gen_block_model, BlockModelSpec, Seed};
