//! Author and journal ranks derived from paper scores.
//!
//! An author receives `v_i / n_i` from every paper `i` they co-wrote with
//! `n_i - 1` others; a journal receives the full `v_i` of each paper it
//! published. Both tables therefore sum to the total score of the papers
//! that contributed. With a [`TimeWindow`] only papers dated on or after
//! `t - nu` years contribute, and scores are not renormalized.
//!
//! Any nonnegative score vector works: damped PaperRank, normalized
//! citations or bare citation counts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use chrono::{Datelike, NaiveDate};

use crate::citegraph::PaperId;
use crate::error::{Error, Result};
use crate::ranking::RankVector;

/// Bibliographic record of one paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperMeta {
    pub paper: PaperId,
    /// Author keys; repeated names count once.
    pub authors: Vec<String>,
    pub journal: Option<String>,
    pub date: Option<NaiveDate>,
}

/// Papers published on or after `t` minus `nu` whole years.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeWindow {
    t: NaiveDate,
    nu: u32,
}

impl TimeWindow {
    pub fn new(t: NaiveDate, nu: u32) -> Result<Self> {
        if nu == 0 {
            return Err(Error::InvalidWindow("window length must be at least one year".into()));
        }
        Ok(TimeWindow { t, nu })
    }

    pub fn reference(&self) -> NaiveDate {
        self.t
    }

    pub fn years(&self) -> u32 {
        self.nu
    }

    /// `d >= t - nu`, comparing `(year, month, day)` with the year shifted
    /// and month/day kept as is (so a Feb 29 reference stays Feb 29).
    pub fn contains(&self, d: NaiveDate) -> bool {
        let start = (self.t.year() - self.nu as i32, self.t.month(), self.t.day());
        (d.year(), d.month(), d.day()) >= start
    }
}

/// Rank per author, keyed by the author string.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AuthorRankTable {
    ranks: BTreeMap<String, f64>,
    subtotal: f64,
}

impl AuthorRankTable {
    pub fn get(&self, author: &str) -> Option<f64> {
        self.ranks.get(author).copied()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Entries in ascending author order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.ranks.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Entries by descending rank, ties by ascending author.
    pub fn sorted(&self) -> Vec<(&str, f64)> {
        let mut rows: Vec<_> = self.iter().collect();
        rows.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then_with(|| a.0.cmp(b.0)));
        rows
    }

    /// Sum of all author ranks.
    pub fn total(&self) -> f64 {
        self.ranks.values().fold(0.0, |a, r| a + r)
    }

    /// Sum of the paper scores that contributed.
    pub fn paper_subtotal(&self) -> f64 {
        self.subtotal
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JournalEntry {
    pub rank: f64,
    pub papers: usize,
}

impl JournalEntry {
    /// Average importance `rank / papers`; `None` when no paper counted.
    pub fn average(&self) -> Option<f64> {
        (self.papers > 0).then(|| self.rank / self.papers as f64)
    }
}

/// Rank, paper count and average per journal. Journals with no
/// contributing paper are absent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JournalRankTable {
    entries: BTreeMap<String, JournalEntry>,
    subtotal: f64,
}

impl JournalRankTable {
    pub fn get(&self, journal: &str) -> Option<JournalEntry> {
        self.entries.get(journal).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, JournalEntry)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Entries by descending rank, ties by ascending journal name.
    pub fn sorted(&self) -> Vec<(&str, JournalEntry)> {
        let mut rows: Vec<_> = self.iter().collect();
        rows.sort_by(|a, b| {
            b.1.rank
                .partial_cmp(&a.1.rank)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.0.cmp(b.0))
        });
        rows
    }

    pub fn total(&self) -> f64 {
        self.entries.values().fold(0.0, |a, e| a + e.rank)
    }

    pub fn paper_subtotal(&self) -> f64 {
        self.subtotal
    }
}

/// Metadata indexed by paper id, one record per scored paper.
fn align(n: usize, meta: &[PaperMeta]) -> Result<Vec<&PaperMeta>> {
    let mut slots: Vec<Option<&PaperMeta>> = vec![None; n];
    for record in meta {
        let id = record.paper.index();
        if id >= n {
            return Err(Error::UnknownPaper { paper: id, n_papers: n });
        }
        if slots[id].replace(record).is_some() {
            return Err(Error::DuplicateMetadata { paper: id });
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(paper, slot)| slot.ok_or(Error::MissingMetadata { paper }))
        .collect()
}

fn in_window(record: &PaperMeta, window: Option<&TimeWindow>) -> Result<bool> {
    match window {
        None => Ok(true),
        Some(w) => {
            let date = record.date.ok_or(Error::NoDate { paper: record.paper.index() })?;
            Ok(w.contains(date))
        }
    }
}

/// `r_j = sum of v_i / n_i` over papers `i` listing author `j`.
pub fn author_ranks(v: &RankVector, meta: &[PaperMeta], window: Option<&TimeWindow>) -> Result<AuthorRankTable> {
    let records = align(v.len(), meta)?;
    let mut table = AuthorRankTable::default();
    for (record, &score) in records.into_iter().zip(v.scores()) {
        if !in_window(record, window)? {
            continue;
        }
        let authors: BTreeSet<&str> = record.authors.iter().map(String::as_str).collect();
        if authors.is_empty() {
            return Err(Error::NoAuthors { paper: record.paper.index() });
        }
        let share = score / authors.len() as f64;
        for author in authors {
            *table.ranks.entry(author.into()).or_insert(0.0) += share;
        }
        table.subtotal += score;
    }
    Ok(table)
}

/// `l_k = sum of v_i` over papers published in journal `k`, with paper
/// counts for the average importance.
pub fn journal_ranks(v: &RankVector, meta: &[PaperMeta], window: Option<&TimeWindow>) -> Result<JournalRankTable> {
    let records = align(v.len(), meta)?;
    let mut table = JournalRankTable::default();
    for (record, &score) in records.into_iter().zip(v.scores()) {
        if !in_window(record, window)? {
            continue;
        }
        let journal = record.journal.as_ref().ok_or(Error::NoJournal { paper: record.paper.index() })?;
        let entry = table
            .entries
            .entry(journal.clone())
            .or_insert(JournalEntry { rank: 0.0, papers: 0 });
        entry.rank += score;
        entry.papers += 1;
        table.subtotal += score;
    }
    Ok(table)
}
