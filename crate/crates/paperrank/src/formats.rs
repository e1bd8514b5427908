//! On-disk formats.
//!
//! All files are UTF-8 with LF line endings. CSV files may open with
//! `# ...` comment lines; `# key=value` comments carry provenance (method,
//! damping, tolerance, seed, tool version) and are read back by later
//! commands. Floats are written in Rust's shortest round-trip form, so
//! writing the same numbers always yields the same bytes.
//!
//! | file        | columns                              |
//! |-------------|--------------------------------------|
//! | edge list   | `citing_id,cited_id`                 |
//! | group map   | `paper_id,group`                     |
//! | rank output | `paper_id,score,unit_score`          |
//! | metadata    | JSON lines `{"paper", "authors", "journal", "date"}` |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use paperrank_core::{BlockModelSpec, CitationGraph, PaperId, PaperMeta};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const EDGE_HEADER: &str = "citing_id,cited_id";
pub const GROUP_HEADER: &str = "paper_id,group";
pub const RANK_HEADER: &str = "paper_id,score,unit_score";

/// Paper id used for the dummy paper's row in rank files.
pub const DUMMY_ID: i64 = -1;

/// Leading `#` comment lines of a file, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Header {
    lines: Vec<String>,
}

impl Header {
    pub fn new(tool_line: &str) -> Self {
        let mut h = Header::default();
        h.note(format!("paperrank {} {tool_line}", env!("CARGO_PKG_VERSION")));
        h
    }

    /// Appends `# key=value`.
    pub fn set(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}={value}"));
        self
    }

    /// Appends a free-form comment.
    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    /// Last value recorded for `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().rev().find_map(|line| {
            let (k, v) = line.split_once('=')?;
            (k.trim() == key).then(|| v.trim())
        })
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    fn render(&self, out: &mut String) {
        for line in &self.lines {
            let _ = writeln!(out, "# {line}");
        }
    }
}

/// Header comments and the remaining CSV body of a file.
struct Split {
    header: Header,
    body: String,
    body_start: usize,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn split_comments(text: &str) -> Split {
    let mut header = Header::default();
    let mut lines = text.lines().enumerate().peekable();
    let mut body_start = 1;
    while let Some((i, line)) = lines.peek() {
        match line.strip_prefix('#') {
            Some(rest) => {
                header.lines.push(rest.trim().to_string());
                lines.next();
            }
            None => {
                body_start = i + 1;
                break;
            }
        }
    }
    let body: Vec<&str> = lines.map(|(_, l)| l).collect();
    Split { header, body: body.join("\n"), body_start }
}

/// Parses a CSV body with an exact header, returning records with their
/// 1-based file line numbers. `#` lines after the header are ignored.
fn csv_records(path: &Path, split: &Split, expected: &str) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(split.body.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(path, split.body_start, e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if headers != expected {
        return Err(CliError::parse(
            path,
            split.body_start,
            format!("expected header `{expected}`, found `{headers}`"),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let line_of = |r: &csv::StringRecord| r.position().map_or(0, |p| p.line() as usize) + split.body_start - 1;
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize) + split.body_start - 1;
            CliError::parse(path, line, e.to_string())
        })?;
        rows.push((line_of(&record), record));
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, record: &csv::StringRecord, k: usize, name: &str) -> Result<T> {
    let raw = record.get(k).unwrap_or("");
    raw.parse()
        .map_err(|_| CliError::parse(path, line, format!("invalid {name} `{raw}`")))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// An edge list read from disk.
#[derive(Debug, Clone)]
pub struct EdgeListFile {
    pub header: Header,
    pub graph: CitationGraph,
}

/// Reads `citing_id,cited_id` pairs.
///
/// The number of papers is `n_papers` when given, else the `n_papers`
/// header value, else one more than the largest id.
pub fn read_edge_list(path: &Path, n_papers: Option<usize>) -> Result<EdgeListFile> {
    let text = read_text(path)?;
    let split = split_comments(&text);
    let mut edges = Vec::new();
    for (line, record) in csv_records(path, &split, EDGE_HEADER)? {
        let citing: usize = field(path, line, &record, 0, "citing_id")?;
        let cited: usize = field(path, line, &record, 1, "cited_id")?;
        edges.push((citing, cited));
    }
    let from_header = match split.header.get("n_papers") {
        Some(raw) => Some(
            raw.parse::<usize>()
                .map_err(|_| CliError::format(path, format!("invalid n_papers header `{raw}`")))?,
        ),
        None => None,
    };
    let n = n_papers
        .or(from_header)
        .unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    let graph = CitationGraph::from_edges(n, edges).map_err(|e| CliError::format(path, e.to_string()))?;
    Ok(EdgeListFile { header: split.header, graph })
}

pub fn write_edge_list(path: &Path, header: &Header, graph: &CitationGraph) -> Result<()> {
    let mut out = String::new();
    header.render(&mut out);
    out.push_str(EDGE_HEADER);
    out.push('\n');
    for (citing, cited) in graph.edges() {
        let _ = writeln!(out, "{citing},{cited}");
    }
    write_file(path, &out)
}

/// Group label per paper, in file order.
pub fn read_group_map(path: &Path) -> Result<Vec<(usize, String)>> {
    let text = read_text(path)?;
    let split = split_comments(&text);
    csv_records(path, &split, GROUP_HEADER)?
        .into_iter()
        .map(|(line, record)| {
            let paper: usize = field(path, line, &record, 0, "paper_id")?;
            Ok((paper, record.get(1).unwrap_or("").to_string()))
        })
        .collect()
}

pub fn write_group_map(path: &Path, header: &Header, groups: &[usize]) -> Result<()> {
    let mut out = String::new();
    header.render(&mut out);
    out.push_str(GROUP_HEADER);
    out.push('\n');
    for (paper, g) in groups.iter().enumerate() {
        let _ = writeln!(out, "{paper},{g}");
    }
    write_file(path, &out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankRow {
    pub paper: i64,
    pub score: f64,
    pub unit_score: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RankFile {
    pub header: Header,
    pub rows: Vec<RankRow>,
}

impl RankFile {
    /// Scores of papers `0..N` by id, ignoring the dummy row. Ids must be
    /// exactly `0..N`.
    pub fn paper_scores(&self, path: &Path) -> Result<Vec<f64>> {
        let papers: Vec<&RankRow> = self.rows.iter().filter(|r| r.paper >= 0).collect();
        let mut scores = vec![None; papers.len()];
        for row in papers {
            let slot = scores
                .get_mut(row.paper as usize)
                .ok_or_else(|| CliError::format(path, format!("paper ids are not contiguous: found {}", row.paper)))?;
            if slot.replace(row.score).is_some() {
                return Err(CliError::format(path, format!("paper {} ranked twice", row.paper)));
            }
        }
        scores
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| CliError::format(path, format!("paper {i} missing"))))
            .collect()
    }
}

/// Rows sorted by descending score, ties by ascending id.
pub fn ranked_rows(ids: &[i64], scores: &[f64], unit: Option<&[f64]>) -> Vec<RankRow> {
    let mut rows: Vec<RankRow> = ids
        .iter()
        .zip(scores)
        .enumerate()
        .map(|(k, (&paper, &score))| RankRow { paper, score, unit_score: unit.map(|u| u[k]) })
        .collect();
    rows.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.paper.cmp(&b.paper)));
    rows
}

pub fn write_rank_file(path: &Path, header: &Header, rows: &[RankRow]) -> Result<()> {
    let mut out = String::new();
    header.render(&mut out);
    out.push_str(RANK_HEADER);
    out.push('\n');
    for row in rows {
        match row.unit_score {
            Some(u) => writeln!(out, "{},{},{}", row.paper, row.score, u),
            None => writeln!(out, "{},{},", row.paper, row.score),
        }
        .expect("writing to a String");
    }
    write_file(path, &out)
}

pub fn read_rank_file(path: &Path) -> Result<RankFile> {
    let text = read_text(path)?;
    let split = split_comments(&text);
    let mut rows = Vec::new();
    for (line, record) in csv_records(path, &split, RANK_HEADER)? {
        let paper: i64 = field(path, line, &record, 0, "paper_id")?;
        let score: f64 = field(path, line, &record, 1, "score")?;
        let unit_score = match record.get(2).unwrap_or("") {
            "" => None,
            _ => Some(field(path, line, &record, 2, "unit_score")?),
        };
        rows.push(RankRow { paper, score, unit_score });
    }
    Ok(RankFile { header: split.header, rows })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaRecord {
    paper: usize,
    #[serde(default)]
    authors: Vec<String>,
    #[serde(default)]
    journal: Option<String>,
    #[serde(default)]
    date: Option<String>,
}

/// Reads one JSON object per line; blank lines are skipped.
pub fn read_metadata(path: &Path) -> Result<Vec<PaperMeta>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: MetaRecord = serde_json::from_str(line).map_err(|e| CliError::parse(path, i + 1, e.to_string()))?;
        let date = match rec.date {
            Some(raw) => Some(
                NaiveDate::parse_from_str(&raw, "%Y-%m-%d")
                    .map_err(|e| CliError::parse(path, i + 1, format!("invalid date `{raw}`: {e}")))?,
            ),
            None => None,
        };
        out.push(PaperMeta { paper: PaperId(rec.paper), authors: rec.authors, journal: rec.journal, date });
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRecord {
    group_sizes: Vec<usize>,
    mean_refs: Vec<Vec<f64>>,
}

/// Block-model spec as JSON: `{"group_sizes": [..], "mean_refs": [[..], ..]}`
/// with rows of `mean_refs` indexed by the citing group.
pub fn read_spec(path: &Path) -> Result<BlockModelSpec> {
    let text = read_text(path)?;
    let rec: SpecRecord = serde_json::from_str(&text).map_err(|e| CliError::format(path, e.to_string()))?;
    BlockModelSpec::new(rec.group_sizes, rec.mean_refs).map_err(|e| CliError::format(path, e.to_string()))
}

/// `dir/stem.ext` -> `dir/stem.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}
