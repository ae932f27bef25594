//! The tidy pairwise score table.
//!
//! Every row holds one score for one unordered variable pair, optionally
//! restricted to one level of a grouping variable. Rows are kept in a
//! canonical order so two tables with the same content compare equal and
//! serialise to the same bytes.

mod csv;
mod filter;
mod matrix;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::registry;

pub use self::csv::{format_value, CSV_HEADER};
pub use self::filter::{FilterCriteria, WideRow, WideTable};
pub use self::matrix::LabeledMatrix;

/// Group label used for rows computed on the whole dataset.
pub const ALL_GROUP: &str = "all";

/// Variable type combination of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairType {
    Nn,
    Ff,
    Fn,
}

impl PairType {
    pub fn as_str(self) -> &'static str {
        match self {
            PairType::Nn => "nn",
            PairType::Ff => "ff",
            PairType::Fn => "fn",
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nn" => Ok(PairType::Nn),
            "ff" => Ok(PairType::Ff),
            "fn" => Ok(PairType::Fn),
            other => Err(Error::MalformedTable(format!("unknown pair_type `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseRow {
    pub x: String,
    pub y: String,
    pub score: String,
    pub group: String,
    pub value: Option<f64>,
    pub pair_type: PairType,
}

impl PairwiseRow {
    pub fn new(
        x: impl Into<String>,
        y: impl Into<String>,
        score: impl Into<String>,
        group: impl Into<String>,
        value: Option<f64>,
        pair_type: PairType,
    ) -> Self {
        PairwiseRow {
            x: x.into(),
            y: y.into(),
            score: score.into(),
            group: group.into(),
            value,
            pair_type,
        }
    }

    pub fn is_ungrouped(&self) -> bool {
        self.group == ALL_GROUP
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.x
            .as_bytes()
            .cmp(other.x.as_bytes())
            .then_with(|| self.y.as_bytes().cmp(other.y.as_bytes()))
            .then_with(|| self.score.as_bytes().cmp(other.score.as_bytes()))
            .then_with(|| group_cmp(&self.group, &other.group))
    }
}

/// Ordering of group labels: named groups by bytes, `all` last.
pub fn group_cmp(a: &str, b: &str) -> Ordering {
    match (a == ALL_GROUP, b == ALL_GROUP) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => a.as_bytes().cmp(b.as_bytes()),
    }
}

/// Canonical, validated collection of pairwise score rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairwiseTable {
    rows: Vec<PairwiseRow>,
}

impl PairwiseTable {
    /// Builds a table from raw rows: orders each pair so `x < y`, checks
    /// registered ranges, rejects duplicate keys and sorts canonically.
    pub fn new(rows: Vec<PairwiseRow>) -> Result<Self> {
        let mut rows = rows;
        for r in rows.iter_mut() {
            if r.x.is_empty() || r.y.is_empty() {
                return Err(Error::EmptyName);
            }
            if r.x == r.y {
                return Err(Error::SelfPair(r.x.clone()));
            }
            if r.x.as_bytes() > r.y.as_bytes() {
                std::mem::swap(&mut r.x, &mut r.y);
            }
            if matches!(r.value, Some(v) if v.is_nan()) {
                r.value = None;
            }
            if let (Some(v), Some(range)) = (r.value, registry::score_range(&r.score)) {
                if !range.contains(v) {
                    let (lo, hi) = range.bounds();
                    return Err(Error::RangeViolation {
                        score: r.score.clone(),
                        value: v,
                        lo,
                        hi,
                    });
                }
            }
        }
        rows.sort_by(|a, b| a.key_cmp(b));
        for w in rows.windows(2) {
            if w[0].key_cmp(&w[1]) == Ordering::Equal {
                let r = &w[1];
                return Err(Error::DuplicateKey {
                    x: r.x.clone(),
                    y: r.y.clone(),
                    score: r.score.clone(),
                    group: r.group.clone(),
                });
            }
        }
        Ok(PairwiseTable { rows })
    }

    pub fn empty() -> Self {
        PairwiseTable::default()
    }

    pub fn rows(&self) -> &[PairwiseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<PairwiseRow> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row-wise union of several tables.
    pub fn concat<I: IntoIterator<Item = PairwiseTable>>(tables: I) -> Result<Self> {
        let rows = tables.into_iter().flat_map(|t| t.rows).collect();
        PairwiseTable::new(rows)
    }

    /// Sorted, de-duplicated variable names mentioned in the table.
    pub fn variables(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .rows
            .iter()
            .flat_map(|r| [r.x.as_str(), r.y.as_str()])
            .collect();
        set.into_iter().map(String::from).collect()
    }

    /// Distinct score names, sorted.
    pub fn scores(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.rows.iter().map(|r| r.score.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }

    /// Distinct named groups (excluding `all`) in canonical order.
    pub fn named_groups(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .rows
            .iter()
            .filter(|r| !r.is_ungrouped())
            .map(|r| r.group.as_str())
            .collect();
        set.into_iter().map(String::from).collect()
    }

    /// Distinct `(x, y)` pairs in canonical order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        for r in &self.rows {
            if out.last().is_none_or(|(x, y)| x != &r.x || y != &r.y) {
                out.push((r.x.clone(), r.y.clone()));
            }
        }
        out
    }

    /// Rows grouped by pair, preserving canonical order within each pair.
    pub fn pair_slices(&self) -> Vec<&[PairwiseRow]> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.rows.len() {
            if i == self.rows.len()
                || self.rows[i].x != self.rows[start].x
                || self.rows[i].y != self.rows[start].y
            {
                if i > start {
                    out.push(&self.rows[start..i]);
                }
                start = i;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(x: &str, y: &str, score: &str, group: &str, v: Option<f64>) -> PairwiseRow {
        PairwiseRow::new(x, y, score, group, v, PairType::Nn)
    }

    #[test]
    fn swaps_into_order() {
        let t = PairwiseTable::new(vec![row("bill_len", "bill_dep", "pearson", "all", Some(-0.235))])
            .unwrap();
        assert_eq!(t.rows()[0].x, "bill_dep");
        assert_eq!(t.rows()[0].y, "bill_len");
    }

    #[test]
    fn empty_is_valid() {
        assert!(PairwiseTable::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = PairwiseTable::new(vec![
            row("a", "b", "pearson", "all", Some(0.1)),
            row("b", "a", "pearson", "all", Some(0.2)),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateKey { .. }));
    }

    #[test]
    fn self_pair_rejected() {
        let err = PairwiseTable::new(vec![row("a", "a", "pearson", "all", None)]).unwrap_err();
        assert_eq!(err, Error::SelfPair("a".into()));
    }

    #[test]
    fn range_checked_for_known_scores_only() {
        let err = PairwiseTable::new(vec![row("a", "b", "cancor", "all", Some(-0.5))]).unwrap_err();
        assert!(matches!(err, Error::RangeViolation { .. }));
        assert!(PairwiseTable::new(vec![row("a", "b", "custom", "all", Some(7.0))]).is_ok());
    }

    #[test]
    fn all_sorts_after_named_groups() {
        let t = PairwiseTable::new(vec![
            row("a", "b", "pearson", "all", Some(0.0)),
            row("a", "b", "pearson", "Gentoo", Some(0.0)),
            row("a", "b", "pearson", "Adelie", Some(0.0)),
            row("a", "b", "pearson", "zz", Some(0.0)),
        ])
        .unwrap();
        let groups: Vec<_> = t.rows().iter().map(|r| r.group.as_str()).collect();
        assert_eq!(groups, vec!["Adelie", "Gentoo", "zz", "all"]);
    }

    #[test]
    fn nan_becomes_missing() {
        let t = PairwiseTable::new(vec![row("a", "b", "pearson", "all", Some(f64::NAN))]).unwrap();
        assert_eq!(t.rows()[0].value, None);
    }
}
