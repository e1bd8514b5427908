//! Seeded block-model citation graphs.
//!
//! Papers are split into contiguous groups (group 0 first). For a paper in
//! group `g` and each target group `h`, the number of references into `h` is
//! drawn from `Binomial(m, mean / m)` where `m` is the number of eligible
//! targets (`|h|`, minus one when `g == h`), and the targets themselves are a
//! uniform sample without replacement. So every entry of the mean matrix is
//! matched in expectation and the graph never holds a self-citation.
//!
//! The generator is `ChaCha8Rng::seed_from_u64(seed)`, consumed in a fixed
//! order (papers ascending, target groups ascending): one binomial draw, then
//! one index sample.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::citegraph::CitationGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

/// Group sizes and the mean number of references from group `g` (row) into
/// group `h` (column).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockModelSpec {
    group_sizes: Vec<usize>,
    mean_refs: Vec<Vec<f64>>,
}

impl BlockModelSpec {
    pub fn new(group_sizes: Vec<usize>, mean_refs: Vec<Vec<f64>>) -> Result<Self> {
        let k = group_sizes.len();
        if k == 0 {
            return Err(Error::InvalidSpec("at least one group is required".into()));
        }
        if mean_refs.len() != k || mean_refs.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidSpec(format!("mean_refs must be a {k}x{k} matrix")));
        }
        for (g, row) in mean_refs.iter().enumerate() {
            for (h, &mean) in row.iter().enumerate() {
                if !(mean >= 0.0 && mean.is_finite()) {
                    return Err(Error::InvalidSpec(format!("mean_refs[{g}][{h}] = {mean} is not a nonnegative number")));
                }
                let eligible = eligible_targets(&group_sizes, g, h);
                if mean > eligible as f64 {
                    return Err(Error::InvalidSpec(format!(
                        "mean_refs[{g}][{h}] = {mean} exceeds the {eligible} citable papers of group {h}"
                    )));
                }
            }
        }
        Ok(BlockModelSpec { group_sizes, mean_refs })
    }

    pub fn group_sizes(&self) -> &[usize] {
        &self.group_sizes
    }

    pub fn mean_refs(&self) -> &[Vec<f64>] {
        &self.mean_refs
    }

    pub fn n_groups(&self) -> usize {
        self.group_sizes.len()
    }

    pub fn n_papers(&self) -> usize {
        self.group_sizes.iter().sum()
    }

    /// First paper id of each group.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.group_sizes
            .iter()
            .map(|&s| {
                let start = acc;
                acc += s;
                start
            })
            .collect()
    }

    /// Group label of every paper.
    pub fn groups(&self) -> Vec<usize> {
        self.group_sizes
            .iter()
            .enumerate()
            .flat_map(|(g, &s)| core::iter::repeat_n(g, s))
            .collect()
    }
}

fn eligible_targets(sizes: &[usize], g: usize, h: usize) -> usize {
    if g == h {
        sizes[h].saturating_sub(1)
    } else {
        sizes[h]
    }
}

/// Draws a citation graph from the block model.
pub fn gen_block_model(spec: &BlockModelSpec, seed: Seed) -> CitationGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let offsets = spec.offsets();
    let sizes = spec.group_sizes();
    let mut edges = Vec::new();
    let mut targets = vec![];
    for (g, &size_g) in sizes.iter().enumerate() {
        for local in 0..size_g {
            let paper = offsets[g] + local;
            for (h, &mean) in spec.mean_refs[g].iter().enumerate() {
                let eligible = eligible_targets(sizes, g, h);
                if mean == 0.0 || eligible == 0 {
                    continue;
                }
                let q = (mean / eligible as f64).min(1.0);
                let count = Binomial::new(eligible as u64, q)
                    .expect("validated probability")
                    .sample(&mut rng) as usize;
                targets.clear();
                targets.extend(index::sample(&mut rng, eligible, count).into_iter().map(|t| {
                    // skip over the citing paper inside its own group
                    if g == h && t >= local {
                        offsets[h] + t + 1
                    } else {
                        offsets[h] + t
                    }
                }));
                edges.extend(targets.iter().map(|&cited| (paper, cited)));
            }
        }
    }
    CitationGraph::from_edges(spec.n_papers(), edges).expect("generated ids are in range")
}

/// The six reference experiments.
///
/// 1. one group of 500 papers, 20 internal references each;
/// 2. groups of 300 and 700, 20 internal references each, no cross citations;
/// 3. groups of 300 (10 refs) and 700 (70 refs), no cross citations;
/// 4. as 3 with the reference means swapped;
/// 5. 900 papers with 20 internal refs, and 100 papers with 50 internal refs
///    plus 20 into the larger group;
/// 6. 200 leaders (20 internal), 200 papers (20 leaders + 20 internal),
///    400 papers (20 leaders + 100 internal).
pub fn example_spec(n: usize) -> Result<BlockModelSpec> {
    let (sizes, means): (Vec<usize>, Vec<Vec<f64>>) = match n {
        1 => (vec![500], vec![vec![20.0]]),
        2 => (vec![300, 700], vec![vec![20.0, 0.0], vec![0.0, 20.0]]),
        3 => (vec![300, 700], vec![vec![10.0, 0.0], vec![0.0, 70.0]]),
        4 => (vec![300, 700], vec![vec![70.0, 0.0], vec![0.0, 10.0]]),
        5 => (vec![900, 100], vec![vec![20.0, 0.0], vec![20.0, 50.0]]),
        6 => (
            vec![200, 200, 400],
            vec![vec![20.0, 0.0, 0.0], vec![20.0, 20.0, 0.0], vec![20.0, 0.0, 100.0]],
        ),
        _ => return Err(Error::UnknownExample(n)),
    };
    BlockModelSpec::new(sizes, means)
}
