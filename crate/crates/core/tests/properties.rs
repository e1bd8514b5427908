use chrono::NaiveDate;
use proptest::prelude::*;

use paperrank_core::{
    author_ranks, example_spec, gen_block_model, journal_ranks, normalized_citations, stochastic_matvec,
    strip_dummy, to_unit_interval, CitationGraph, Normalization, PaperId, PaperMeta, RankVector, Seed,
    TimeWindow,
};

fn edge_list() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..40).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..200)))
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn order(x: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(a.cmp(&b)));
    idx
}

proptest! {
    #[test]
    fn adjacency_is_transposed((n, edges) in edge_list()) {
        let g = CitationGraph::from_edges(n, edges).unwrap();
        let mut from_out = 0;
        for j in 0..n {
            let refs = g.references(PaperId(j));
            prop_assert!(!refs.contains(&j));
            prop_assert!(refs.windows(2).all(|w| w[0] < w[1]));
            for &i in refs {
                prop_assert!(g.cited_by(PaperId(i)).contains(&j));
            }
            from_out += refs.len();
        }
        let from_in: usize = (0..n).map(|i| g.cited_by(PaperId(i)).len()).sum();
        prop_assert_eq!(from_out, from_in);
        prop_assert_eq!(g.bare_citations().iter().sum::<usize>(), g.n_edges());
        prop_assert_eq!(g.reference_counts(false).iter().sum::<usize>(), g.n_edges());
        prop_assert!(g.reference_counts(true).iter().all(|&f| f >= 1));
    }

    #[test]
    fn build_ignores_edge_order((n, edges) in edge_list(), rot in 0usize..200) {
        let g = CitationGraph::from_edges(n, edges.iter().copied()).unwrap();
        let mut shuffled = edges.clone();
        if !shuffled.is_empty() {
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
        }
        prop_assert_eq!(g, CitationGraph::from_edges(n, shuffled).unwrap());
    }

    #[test]
    fn matvec_preserves_signed_sum((n, edges) in edge_list(), seed in any::<u64>()) {
        let g = CitationGraph::from_edges(n, edges).unwrap();
        let x: Vec<f64> = (0..n)
            .map(|i| ((seed.rotate_left(i as u32) % 2001) as f64 - 1000.0) / 7.0)
            .collect();
        let before: f64 = x.iter().sum();
        let after: f64 = stochastic_matvec(&g, &x).iter().sum();
        let scale: f64 = x.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        prop_assert!((before - after).abs() <= 1e-12 * scale);
        prop_assert!(rel_close(normalized_citations(&g).sum(), n as f64, 1e-12));
    }

    #[test]
    fn scaling_preserves_order(v in prop::collection::vec(0.0f64..10.0, 2..50)) {
        prop_assume!(v.iter().any(|&x| x > 0.0));
        let rv = RankVector::raw(v.clone());
        let unit = to_unit_interval(&rv).unwrap();
        prop_assert_eq!(order(unit.scores()), order(&v));
        prop_assert_eq!(unit.scores().iter().cloned().fold(0.0, f64::max), 1.0);

        prop_assume!(v[1..].iter().any(|&x| x > 0.0));
        let total: f64 = v.iter().sum();
        let sv = RankVector::new(v.iter().map(|x| x / total).collect(), Normalization::SumToOne);
        let stripped = strip_dummy(&sv).unwrap();
        prop_assert_eq!(order(stripped.scores()), order(&v[1..]));
        prop_assert!((stripped.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn aggregation_conserves_mass(
        scores in prop::collection::vec(0.0f64..1.0, 1..60),
        assign in prop::collection::vec((prop::collection::btree_set(0u8..12, 1..5), 0u8..5, 1990i32..2024), 60),
    ) {
        let meta = build_meta(&scores, &assign);
        let v = RankVector::raw(scores.clone());
        let total: f64 = scores.iter().sum();
        let authors = author_ranks(&v, &meta, None).unwrap();
        let journals = journal_ranks(&v, &meta, None).unwrap();
        prop_assert!(rel_close(authors.total(), total, 1e-12));
        prop_assert!(rel_close(journals.total(), total, 1e-12));
        prop_assert_eq!(journals.iter().map(|(_, e)| e.papers).sum::<usize>(), scores.len());
    }

    #[test]
    fn raising_one_score_touches_only_its_entries(
        scores in prop::collection::vec(0.0f64..1.0, 1..30),
        assign in prop::collection::vec((prop::collection::btree_set(0u8..8, 1..4), 0u8..4, 1990i32..2024), 30),
        pick in any::<prop::sample::Index>(),
        bump in 0.01f64..1.0,
    ) {
        let meta = build_meta(&scores, &assign);
        let k = pick.index(scores.len());
        let mut raised = scores.clone();
        raised[k] += bump;
        let (v0, v1) = (RankVector::raw(scores), RankVector::raw(raised));
        let (a0, a1) = (author_ranks(&v0, &meta, None).unwrap(), author_ranks(&v1, &meta, None).unwrap());
        for (name, r0) in a0.iter() {
            let r1 = a1.get(name).unwrap();
            if meta[k].authors.iter().any(|a| a == name) {
                prop_assert!(r1 > r0);
            } else {
                prop_assert_eq!(r1, r0);
            }
        }
        let (j0, j1) = (journal_ranks(&v0, &meta, None).unwrap(), journal_ranks(&v1, &meta, None).unwrap());
        for (name, e0) in j0.iter() {
            let e1 = j1.get(name).unwrap();
            if meta[k].journal.as_deref() == Some(name) {
                prop_assert!(e1.rank > e0.rank);
            } else {
                prop_assert_eq!(e1.rank, e0.rank);
            }
        }
    }

    #[test]
    fn wider_windows_never_lose_rank(
        scores in prop::collection::vec(0.0f64..1.0, 1..40),
        assign in prop::collection::vec((prop::collection::btree_set(0u8..8, 1..4), 0u8..4, 1990i32..2024), 40),
        nu in 1u32..20,
        extra in 1u32..10,
    ) {
        let meta = build_meta(&scores, &assign);
        let v = RankVector::raw(scores);
        let t = NaiveDate::from_ymd_opt(2024, 7, 1).unwrap();
        let narrow = TimeWindow::new(t, nu).unwrap();
        let wide = TimeWindow::new(t, nu + extra).unwrap();
        let (an, aw) = (author_ranks(&v, &meta, Some(&narrow)).unwrap(), author_ranks(&v, &meta, Some(&wide)).unwrap());
        for (name, r) in an.iter() {
            prop_assert!(aw.get(name).unwrap() >= r);
        }
        let (jn, jw) = (journal_ranks(&v, &meta, Some(&narrow)).unwrap(), journal_ranks(&v, &meta, Some(&wide)).unwrap());
        for (name, e) in jn.iter() {
            prop_assert!(jw.get(name).unwrap().rank >= e.rank);
        }
        prop_assert!(rel_close(an.total(), an.paper_subtotal(), 1e-12));
        prop_assert!(rel_close(jw.total(), jw.paper_subtotal(), 1e-12));
    }
}

fn build_meta(scores: &[f64], assign: &[(std::collections::BTreeSet<u8>, u8, i32)]) -> Vec<PaperMeta> {
    scores
        .iter()
        .zip(assign)
        .enumerate()
        .map(|(i, (_, (authors, journal, year)))| PaperMeta {
            paper: PaperId(i),
            authors: authors.iter().map(|a| format!("author-{a}")).collect(),
            journal: Some(format!("journal-{journal}")),
            date: NaiveDate::from_ymd_opt(*year, 3, 1),
        })
        .collect()
}

#[test]
fn block_model_calibration() {
    for n in 1..=6 {
        let spec = example_spec(n).unwrap();
        let groups = spec.groups();
        for seed in [1, 2] {
            let g = gen_block_model(&spec, Seed(seed));
            assert_eq!(g, gen_block_model(&spec, Seed(seed)));
            let k = spec.n_groups();
            let mut refs = vec![vec![0usize; k]; k];
            for (citing, cited) in g.edges() {
                assert_ne!(citing, cited);
                refs[groups[citing]][groups[cited]] += 1;
            }
            for (a, row) in refs.iter().enumerate() {
                for (b, &count) in row.iter().enumerate() {
                    let mean = spec.mean_refs()[a][b];
                    let observed = count as f64 / spec.group_sizes()[a] as f64;
                    if mean == 0.0 {
                        assert_eq!(count, 0, "example {n}: cross edges {a}->{b}");
                    } else {
                        assert!((observed - mean).abs() <= 0.1 * mean, "example {n}: {a}->{b} {observed} vs {mean}");
                    }
                }
            }
        }
    }
}
