//! Sparse citation matrix.
//!
//! Column `j` of the citation matrix lists the papers that paper `j` cites
//! (its out-list); row `i` lists the papers citing `i` (its in-list). Both
//! directions are stored in compressed form so that citation counts and
//! either matvec orientation cost `O(deg)` per paper.
//!
//! Self-citations are never stored. The ranking models add an implicit
//! self-reference on top of this raw matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense paper index in `0..N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PaperId(pub usize);

impl PaperId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PaperId {
    fn from(index: usize) -> Self {
        PaperId(index)
    }
}

/// Compressed adjacency: `targets[offsets[k]..offsets[k + 1]]` is the sorted
/// list belonging to paper `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Compressed {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Compressed {
    fn list(&self, k: usize) -> &[usize] {
        &self.targets[self.offsets[k]..self.offsets[k + 1]]
    }

    fn degree(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }
}

/// Immutable 0/1 citation matrix over `N` papers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    n_papers: usize,
    out: Compressed,
    inc: Compressed,
    dropped_self_loops: usize,
    collapsed_duplicates: usize,
}

impl CitationGraph {
    /// Builds the graph from `(citing, cited)` pairs.
    ///
    /// Duplicate pairs collapse to a single citation and self-citations are
    /// dropped (see [`dropped_self_loops`](Self::dropped_self_loops)). The
    /// result does not depend on the order of `edges`.
    pub fn from_edges<I, E>(n_papers: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        let mut pairs = Vec::new();
        let mut dropped_self_loops = 0;
        for edge in edges {
            let (citing, cited) = edge.into();
            if citing >= n_papers || cited >= n_papers {
                return Err(Error::EdgeOutOfRange { citing, cited, n_papers });
            }
            if citing == cited {
                dropped_self_loops += 1;
                continue;
            }
            pairs.push((citing, cited));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        let collapsed_duplicates = before - pairs.len();

        let mut out_offsets = vec![0usize; n_papers + 1];
        let mut in_offsets = vec![0usize; n_papers + 1];
        for &(citing, cited) in &pairs {
            out_offsets[citing + 1] += 1;
            in_offsets[cited + 1] += 1;
        }
        for k in 0..n_papers {
            out_offsets[k + 1] += out_offsets[k];
            in_offsets[k + 1] += in_offsets[k];
        }

        // pairs are sorted by (citing, cited), so out-lists come out sorted
        // and a stable scatter keeps every in-list sorted by citing paper.
        let out_targets: Vec<usize> = pairs.iter().map(|&(_, cited)| cited).collect();
        let mut in_targets = vec![0usize; pairs.len()];
        let mut cursor = in_offsets.clone();
        for &(citing, cited) in &pairs {
            in_targets[cursor[cited]] = citing;
            cursor[cited] += 1;
        }

        Ok(CitationGraph {
            n_papers,
            out: Compressed { offsets: out_offsets, targets: out_targets },
            inc: Compressed { offsets: in_offsets, targets: in_targets },
            dropped_self_loops,
            collapsed_duplicates,
        })
    }

    /// Graph with `n_papers` papers and no citations.
    pub fn edgeless(n_papers: usize) -> Self {
        CitationGraph::from_edges(n_papers, core::iter::empty::<(usize, usize)>())
            .expect("no edges to validate")
    }

    pub fn n_papers(&self) -> usize {
        self.n_papers
    }

    /// Number of stored citations (nonzeros of `L`).
    pub fn n_edges(&self) -> usize {
        self.out.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n_edges() == 0
    }

    /// Self-citations present in the input and discarded.
    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    /// Repeated input pairs merged into one citation.
    pub fn collapsed_duplicates(&self) -> usize {
        self.collapsed_duplicates
    }

    /// Papers cited by `paper`, ascending.
    pub fn references(&self, paper: PaperId) -> &[usize] {
        self.out.list(paper.0)
    }

    /// Papers citing `paper`, ascending.
    pub fn cited_by(&self, paper: PaperId) -> &[usize] {
        self.inc.list(paper.0)
    }

    pub fn out_degree(&self, paper: PaperId) -> usize {
        self.out.degree(paper.0)
    }

    pub fn in_degree(&self, paper: PaperId) -> usize {
        self.inc.degree(paper.0)
    }

    /// All `(citing, cited)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_papers).flat_map(move |j| self.out.list(j).iter().map(move |&i| (j, i)))
    }

    /// Bare citation counts `c = L e`, computed on the stored matrix.
    pub fn bare_citations(&self) -> Vec<usize> {
        (0..self.n_papers).map(|i| self.inc.degree(i)).collect()
    }

    /// Reference counts `f = e^T L`, plus one per paper when `with_self_loop`
    /// is set (so every entry is at least 1).
    pub fn reference_counts(&self, with_self_loop: bool) -> Vec<usize> {
        let extra = usize::from(with_self_loop);
        (0..self.n_papers).map(|j| self.out.degree(j) + extra).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chain() -> CitationGraph {
        CitationGraph::from_edges(3, [(1, 0), (2, 0), (2, 1)]).unwrap()
    }

    fn out_lists(g: &CitationGraph) -> Vec<Vec<usize>> {
        (0..g.n_papers()).map(|j| g.references(PaperId(j)).to_vec()).collect()
    }

    #[test]
    fn builds_chain() {
        let g = chain();
        assert_eq!(out_lists(&g), vec![vec![], vec![0], vec![0, 1]]);
        assert_eq!(g.cited_by(PaperId(0)), &[1, 2]);
        assert_eq!(g.cited_by(PaperId(1)), &[2]);
        assert_eq!(g.n_edges(), 3);
    }

    #[test]
    fn collapses_duplicates() {
        let g = CitationGraph::from_edges(3, [(1, 0), (1, 0)]).unwrap();
        assert_eq!(out_lists(&g), vec![vec![], vec![0], vec![]]);
        assert_eq!(g.collapsed_duplicates(), 1);
    }

    #[test]
    fn drops_self_loops() {
        let g = CitationGraph::from_edges(2, [(0, 0)]).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.dropped_self_loops(), 1);
    }

    #[test]
    fn rejects_out_of_range() {
        let err = CitationGraph::from_edges(3, [(1, 0), (3, 1)]).unwrap_err();
        assert_eq!(err, Error::EdgeOutOfRange { citing: 3, cited: 1, n_papers: 3 });
        let msg = alloc::format!("{err}");
        assert!(msg.contains("3 -> 1"));
    }

    #[test]
    fn bare_citation_counts() {
        assert_eq!(chain().bare_citations(), vec![2, 1, 0]);
        assert_eq!(CitationGraph::edgeless(3).bare_citations(), vec![0, 0, 0]);
    }

    #[test]
    fn reference_count_variants() {
        assert_eq!(chain().reference_counts(false), vec![0, 1, 2]);
        assert_eq!(chain().reference_counts(true), vec![1, 2, 3]);
        assert_eq!(CitationGraph::edgeless(4).reference_counts(true), vec![1, 1, 1, 1]);
    }

    #[test]
    fn edges_round_trip() {
        let g = chain();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(CitationGraph::from_edges(3, edges).unwrap(), g);
    }

    #[test]
    fn zero_papers() {
        let g = CitationGraph::edgeless(0);
        assert_eq!(g.n_papers(), 0);
        assert!(g.bare_citations().is_empty());
    }
}
