//! Subcommand implementations. Each returns an [`Outcome`] or a
//! [`CliError`]; `main` maps them to exit codes 0, 3 and 2.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use paperrank_core::ranking::{bare_citation_scores, default_max_iter, paperrank_with, DUMMY_DEFAULT_MAX_ITER};
use paperrank_core::stats::{group_means, pearson, spearman};
use paperrank_core::{
    author_ranks, dummy_paperrank, example_spec, gen_block_model, journal_ranks, normalized_citations, strip_dummy,
    to_unit_interval, CitationGraph, ConvergenceReport, DampingParam, Error as CoreError, RankVector, Seed,
    TimeWindow,
};

use crate::cli::{AggregateArgs, CompareArgs, HistArgs, Method, RankArgs, SolverArgs, SynthArgs, Target};
use crate::error::{CliError, Result};
use crate::formats::{
    ranked_rows, read_edge_list, read_group_map, read_metadata, read_rank_file, read_spec, sibling, write_edge_list,
    write_group_map, write_rank_file, Header, DUMMY_ID,
};
use crate::parallel::{stochastic_operator, threads_from_env};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// Output was written but an iterative solve hit its budget.
    NotConverged,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Done => 0,
            Outcome::NotConverged => 3,
        }
    }
}

/// Provenance keys copied from an input header into derived files.
const CARRIED_KEYS: [&str; 3] = ["example", "spec", "seed"];

fn carry(from: &crate::formats::Header, to: &mut Header) {
    for key in CARRIED_KEYS {
        if let Some(v) = from.get(key) {
            to.set(key, v);
        }
    }
}

pub fn synth(args: &SynthArgs) -> Result<Outcome> {
    let mut header = Header::new("synth");
    let spec = match (&args.example, &args.spec) {
        (Some(n), _) => {
            header.set("example", n);
            example_spec(*n)?
        }
        (None, Some(path)) => {
            let spec = read_spec(path)?;
            header.set("spec", format!("{:?}/{:?}", spec.group_sizes(), spec.mean_refs()).replace(' ', ""));
            spec
        }
        (None, None) => return Err(CliError::Usage("one of --example or --spec is required".into())),
    };
    header.set("seed", args.seed).set("rng", "chacha8").set("n_papers", spec.n_papers());
    let graph = gen_block_model(&spec, Seed(args.seed));
    header.set("n_edges", graph.n_edges());

    write_edge_list(&args.out, &header, &graph)?;
    let groups_path = args.groups_out.clone().unwrap_or_else(|| sibling(&args.out, "groups.csv"));
    write_group_map(&groups_path, &header, &spec.groups())?;
    Ok(Outcome::Done)
}

fn damping(solver: &SolverArgs) -> Result<DampingParam> {
    Ok(DampingParam::new(solver.damping)?)
}

fn warn_dropped(graph: &CitationGraph, header: &mut Header) {
    if graph.dropped_self_loops() > 0 {
        let msg = format!("warning: dropped {} self-citations", graph.dropped_self_loops());
        eprintln!("{msg}");
        header.note(msg);
    }
}

fn record_report(header: &mut Header, tol: f64, max_iter: usize, rep: &ConvergenceReport) {
    header
        .set("tol", tol)
        .set("max_iter", max_iter)
        .set("iterations", rep.iterations)
        .set("residual", rep.final_residual)
        .set("converged", rep.converged);
}

/// Unit-interval scores, or `None` with a header warning when all are zero.
fn unit_scores(scores: &[f64], header: &mut Header) -> Result<Option<Vec<f64>>> {
    match to_unit_interval(&RankVector::raw(scores.to_vec())) {
        Ok(u) => Ok(Some(u.into_scores())),
        Err(CoreError::AllZero | CoreError::TooShort { .. }) => {
            let msg = "warning: all scores are zero, unit_score left empty";
            eprintln!("{msg}");
            header.note(msg);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn write_scores(path: &Path, mut header: Header, ids: &[i64], scores: &[f64]) -> Result<()> {
    let unit = unit_scores(scores, &mut header)?;
    write_rank_file(path, &header, &ranked_rows(ids, scores, unit.as_deref()))
}

pub fn rank(args: &RankArgs) -> Result<Outcome> {
    let input = read_edge_list(&args.graph, args.solver.n_papers)?;
    let graph = &input.graph;
    let mut header = Header::new("rank");
    header.set("method", args.method.name());
    carry(&input.header, &mut header);
    header.set("n_papers", graph.n_papers()).set("n_edges", graph.n_edges());
    warn_dropped(graph, &mut header);

    let n = graph.n_papers();
    let paper_ids: Vec<i64> = (0..n as i64).collect();
    let tol = args.solver.tol;
    match args.method {
        Method::Citations => {
            write_scores(&args.out, header, &paper_ids, bare_citation_scores(graph).scores())?;
            Ok(Outcome::Done)
        }
        Method::Normalized => {
            write_scores(&args.out, header, &paper_ids, normalized_citations(graph).scores())?;
            Ok(Outcome::Done)
        }
        Method::Paperrank => {
            let p = damping(&args.solver)?;
            let max_iter = args.solver.max_iter.unwrap_or_else(|| default_max_iter(tol, p));
            let op = stochastic_operator(graph, threads_from_env()?)?;
            let (v, rep) = paperrank_with(op.as_ref(), p, tol, max_iter)?;
            header.set("damping", p.value());
            record_report(&mut header, tol, max_iter, &rep);
            write_scores(&args.out, header, &paper_ids, v.scores())?;
            Ok(if rep.converged { Outcome::Done } else { Outcome::NotConverged })
        }
        Method::Dummy => {
            let max_iter = args.solver.max_iter.unwrap_or(DUMMY_DEFAULT_MAX_ITER);
            let (v, rep) = dummy_paperrank(graph, tol, max_iter)?;
            record_report(&mut header, tol, max_iter, &rep);
            let stripped = strip_dummy(&v)?;

            let mut stripped_header = header.clone();
            stripped_header.set("method", "dummy-stripped");
            header.note(format!("paper_id {DUMMY_ID} is the dummy paper"));
            let ids: Vec<i64> = std::iter::once(DUMMY_ID).chain(paper_ids.iter().copied()).collect();
            write_scores(&args.out, header, &ids, v.scores())?;
            write_scores(&sibling(&args.out, "stripped.csv"), stripped_header, &paper_ids, stripped.scores())?;
            Ok(if rep.converged { Outcome::Done } else { Outcome::NotConverged })
        }
    }
}

/// Group labels in display order: numeric labels numerically, then the rest.
fn ordered_labels<'a>(labels: impl Iterator<Item = &'a String>) -> Vec<String> {
    let mut uniq: Vec<String> = labels.cloned().collect();
    uniq.sort_by(|a, b| match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        _ => a.cmp(b),
    });
    uniq.dedup();
    uniq
}

/// Group index per paper `0..n` and the label of each index.
fn load_groups(path: &Path, n: usize) -> Result<(Vec<usize>, Vec<String>)> {
    let raw = read_group_map(path)?;
    let mut by_paper: BTreeMap<usize, String> = BTreeMap::new();
    for (paper, label) in raw {
        if by_paper.insert(paper, label).is_some() {
            return Err(CliError::format(path, format!("paper {paper} listed twice")));
        }
    }
    let labels = ordered_labels(by_paper.values());
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
    let groups = (0..n)
        .map(|paper| {
            by_paper
                .get(&paper)
                .map(|l| index[l.as_str()])
                .ok_or_else(|| CliError::format(path, format!("no group for paper {paper}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((groups, labels))
}

/// Equal-width bucket of a unit score; the top bucket is closed on the right.
pub fn bucket(u: f64, bins: usize) -> usize {
    ((u * bins as f64) as usize).min(bins - 1)
}

pub fn hist(args: &HistArgs) -> Result<Outcome> {
    let file = read_rank_file(&args.ranks)?;
    let bins = args.bins as usize;
    let rows: Vec<_> = file.rows.iter().filter(|r| r.paper >= 0).collect();
    let mut header = Header::new("hist");
    if let Some(m) = file.header.get("method") {
        header.set("method", m);
    }
    carry(&file.header, &mut header);
    header.set("bins", bins);

    let mut units = Vec::with_capacity(rows.len());
    for row in &rows {
        let u = row.unit_score.ok_or_else(|| {
            CliError::format(&args.ranks, format!("missing unit score for paper {}", row.paper))
        })?;
        if !(0.0..=1.0).contains(&u) {
            return Err(CliError::format(&args.ranks, format!("unit score {u} of paper {} outside [0, 1]", row.paper)));
        }
        units.push(u);
    }

    let (columns, labels): (Vec<usize>, Vec<String>) = match &args.group_map {
        Some(path) => {
            let (groups, labels) = load_groups(path, rows.iter().map(|r| r.paper as usize + 1).max().unwrap_or(0))?;
            (rows.iter().map(|r| groups[r.paper as usize]).collect(), labels)
        }
        None => (vec![0; rows.len()], vec![]),
    };
    let n_cols = labels.len().max(1);
    let mut counts = vec![vec![0usize; n_cols]; bins];
    for (&u, &col) in units.iter().zip(&columns) {
        counts[bucket(u, bins)][col] += 1;
    }

    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("bin_start,bin_end");
    if labels.is_empty() {
        out.push_str(",count");
    } else {
        for l in &labels {
            let _ = write!(out, ",group_{l}");
        }
    }
    out.push('\n');
    for (k, row) in counts.iter().enumerate() {
        let _ = write!(out, "{},{}", k as f64 / bins as f64, (k + 1) as f64 / bins as f64);
        for c in row {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    fs::write(&args.out, out).map_err(|e| CliError::io(&args.out, e))?;
    Ok(Outcome::Done)
}

/// Scores of all four methods on one graph.
pub struct Comparison {
    pub paperrank: Vec<f64>,
    pub report: ConvergenceReport,
    pub max_iter: usize,
    pub citations: Vec<f64>,
    pub normalized: Vec<f64>,
    /// Dummy model with the dummy entry stripped; `None` for an edgeless graph.
    pub dummy: Option<(Vec<f64>, ConvergenceReport)>,
}

pub fn compare_scores(graph: &CitationGraph, solver: &SolverArgs, threads: usize) -> Result<Comparison> {
    let p = damping(solver)?;
    let max_iter = solver.max_iter.unwrap_or_else(|| default_max_iter(solver.tol, p));
    let op = stochastic_operator(graph, threads)?;
    let (v, report) = paperrank_with(op.as_ref(), p, solver.tol, max_iter)?;
    let dummy = match dummy_paperrank(graph, solver.tol, solver.max_iter.unwrap_or(DUMMY_DEFAULT_MAX_ITER)) {
        Ok((d, rep)) => Some((strip_dummy(&d)?.into_scores(), rep)),
        Err(CoreError::EmptyCitationMatrix) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Comparison {
        paperrank: v.into_scores(),
        report,
        max_iter,
        citations: bare_citation_scores(graph).into_scores(),
        normalized: normalized_citations(graph).into_scores(),
        dummy,
    })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

pub fn compare(args: &CompareArgs) -> Result<Outcome> {
    let input = read_edge_list(&args.graph, args.solver.n_papers)?;
    let graph = &input.graph;
    let cmp = compare_scores(graph, &args.solver, threads_from_env()?)?;
    let groups = match &args.group_map {
        Some(path) => Some(load_groups(path, graph.n_papers())?),
        None => None,
    };

    let mut header = Header::new("compare");
    carry(&input.header, &mut header);
    header.set("n_papers", graph.n_papers()).set("damping", args.solver.damping);
    record_report(&mut header, args.solver.tol, cmp.max_iter, &cmp.report);
    match &cmp.dummy {
        Some((_, rep)) => {
            header.set("dummy_iterations", rep.iterations).set("dummy_converged", rep.converged);
        }
        None => {
            header.note("warning: no citations, dummy model undefined");
        }
    }

    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("paper_id,paperrank,citations,normalized,dummy\n");
    for i in 0..graph.n_papers() {
        let d = cmp.dummy.as_ref().map_or(String::new(), |(d, _)| d[i].to_string());
        let _ = writeln!(out, "{i},{},{},{},{d}", cmp.paperrank[i], cmp.citations[i], cmp.normalized[i]);
    }
    fs::write(&args.out, out).map_err(|e| CliError::io(&args.out, e))?;

    let mut summary = String::new();
    for line in header.lines() {
        let _ = writeln!(summary, "# {line}");
    }
    summary.push_str("statistic,method,group,value\n");
    let others: [(&str, Option<&[f64]>); 3] = [
        ("citations", Some(&cmp.citations)),
        ("normalized", Some(&cmp.normalized)),
        ("dummy", cmp.dummy.as_ref().map(|(d, _)| d.as_slice())),
    ];
    for (name, scores) in others {
        let s = scores.and_then(|s| spearman(&cmp.paperrank, s));
        let r = scores.and_then(|s| pearson(&cmp.paperrank, s));
        let _ = writeln!(summary, "spearman,{name},,{}", fmt_opt(s));
        let _ = writeln!(summary, "pearson,{name},,{}", fmt_opt(r));
    }
    if let Some((groups, labels)) = &groups {
        let all: [(&str, Option<&[f64]>); 4] = [("paperrank", Some(&cmp.paperrank)), others[0], others[1], others[2]];
        for (name, scores) in all {
            let means = scores.map_or_else(|| vec![None; labels.len()], |s| group_means(s, groups, labels.len()));
            for (label, mean) in labels.iter().zip(means) {
                let _ = writeln!(summary, "group_mean,{name},{label},{}", fmt_opt(mean));
            }
        }
    }
    let summary_path = sibling(&args.out, "summary.csv");
    fs::write(&summary_path, &summary).map_err(|e| CliError::io(&summary_path, e))?;
    print!("{summary}");

    let converged = cmp.report.converged && cmp.dummy.as_ref().is_none_or(|(_, r)| r.converged);
    Ok(if converged { Outcome::Done } else { Outcome::NotConverged })
}

fn parse_window(args: &AggregateArgs) -> Result<Option<TimeWindow>> {
    match (&args.window_t, args.window_nu) {
        (Some(t), Some(nu)) => {
            let date = NaiveDate::parse_from_str(t, "%Y-%m-%d")
                .map_err(|e| CliError::Usage(format!("invalid --window-t `{t}`: {e}")))?;
            Ok(Some(TimeWindow::new(date, nu)?))
        }
        (None, None) => Ok(None),
        _ => Err(CliError::Usage("--window-t and --window-nu go together".into())),
    }
}

pub fn aggregate(args: &AggregateArgs) -> Result<Outcome> {
    let file = read_rank_file(&args.ranks)?;
    let scores = RankVector::raw(file.paper_scores(&args.ranks)?);
    let meta = read_metadata(&args.metadata)?;
    let window = parse_window(args)?;

    let mut header = Header::new("aggregate");
    if let Some(m) = file.header.get("method") {
        header.set("method", m);
    }
    for key in ["damping", "tol"] {
        if let Some(v) = file.header.get(key) {
            header.set(key, v);
        }
    }
    carry(&file.header, &mut header);
    header.set("target", match args.target {
        Target::Authors => "authors",
        Target::Journals => "journals",
    });
    if let Some(w) = &window {
        header.set("window_t", w.reference()).set("window_nu", w.years());
    }

    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let (subtotal, total) = match args.target {
        Target::Authors => {
            let table = author_ranks(&scores, &meta, window.as_ref())?;
            out.push_str("author,rank\n");
            for (name, r) in table.sorted() {
                let _ = writeln!(out, "{},{r}", csv_field(name));
            }
            (table.paper_subtotal(), table.total())
        }
        Target::Journals => {
            let table = journal_ranks(&scores, &meta, window.as_ref())?;
            out.push_str("journal,rank,papers,average\n");
            for (name, e) in table.sorted() {
                let avg = e.average().map_or(String::new(), |a| a.to_string());
                let _ = writeln!(out, "{},{},{},{avg}", csv_field(name), e.rank, e.papers);
            }
            (table.paper_subtotal(), table.total())
        }
    };
    let _ = writeln!(out, "# conservation: {subtotal:.6} = {total:.6}");
    fs::write(&args.out, out).map_err(|e| CliError::io(&args.out, e))?;
    Ok(Outcome::Done)
}

/// Quotes a CSV field when needed.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
