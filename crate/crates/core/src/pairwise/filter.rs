use std::collections::BTreeMap;

use super::{group_cmp, PairType, PairwiseRow, PairwiseTable};
use crate::error::{Error, Result};

/// Pair-level selection rules. Numeric thresholds combine with OR; the
/// variable restriction is applied on top of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterCriteria {
    pub min_max_abs: Option<f64>,
    pub min_range: Option<f64>,
    pub with_variable: Option<String>,
}

/// Max |value| and max - min over the non-missing values of a pair.
pub(crate) fn pair_extent(rows: &[PairwiseRow]) -> Option<(f64, f64)> {
    let mut vals = rows.iter().filter_map(|r| r.value);
    let first = vals.next()?;
    let (mut lo, mut hi, mut abs) = (first, first, first.abs());
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
        abs = abs.max(v.abs());
    }
    Some((abs, hi - lo))
}

impl PairwiseTable {
    pub fn filter_pairs(&self, criteria: &FilterCriteria) -> Result<PairwiseTable> {
        for t in [criteria.min_max_abs, criteria.min_range].into_iter().flatten() {
            if !t.is_finite() {
                return Err(Error::NonFiniteThreshold);
            }
        }
        if let Some(v) = &criteria.with_variable {
            if !self.rows.iter().any(|r| &r.x == v || &r.y == v) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        let numeric = criteria.min_max_abs.is_some() || criteria.min_range.is_some();
        let mut kept = Vec::new();
        for pair in self.pair_slices() {
            let (x, y) = (&pair[0].x, &pair[0].y);
            if let Some(v) = &criteria.with_variable {
                if x != v && y != v {
                    continue;
                }
            }
            if numeric {
                let Some((max_abs, range)) = pair_extent(pair) else {
                    continue;
                };
                let by_max = criteria.min_max_abs.is_some_and(|t| max_abs >= t);
                let by_range = criteria.min_range.is_some_and(|t| range >= t);
                if !(by_max || by_range) {
                    continue;
                }
            }
            kept.extend_from_slice(pair);
        }
        Ok(PairwiseTable { rows: kept })
    }

    /// Spreads scores into columns keyed by `(x, y, group)`.
    pub fn pivot_wide(&self) -> WideTable {
        let scores = self.scores();
        let col: BTreeMap<&str, usize> = scores
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut rows: Vec<WideRow> = Vec::new();
        let mut index: BTreeMap<(String, String, String), usize> = BTreeMap::new();
        for r in &self.rows {
            let key = (r.x.clone(), r.y.clone(), r.group.clone());
            let i = *index.entry(key).or_insert_with(|| {
                rows.push(WideRow {
                    x: r.x.clone(),
                    y: r.y.clone(),
                    group: r.group.clone(),
                    pair_type: r.pair_type,
                    values: vec![None; scores.len()],
                });
                rows.len() - 1
            });
            rows[i].values[col[r.score.as_str()]] = r.value;
        }
        rows.sort_by(|a, b| {
            a.x.as_bytes()
                .cmp(b.x.as_bytes())
                .then_with(|| a.y.as_bytes().cmp(b.y.as_bytes()))
                .then_with(|| group_cmp(&a.group, &b.group))
        });
        WideTable { scores, rows }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WideRow {
    pub x: String,
    pub y: String,
    pub group: String,
    pub pair_type: PairType,
    pub values: Vec<Option<f64>>,
}

/// Result of [`PairwiseTable::pivot_wide`]: one value column per score.
#[derive(Debug, Clone, PartialEq)]
pub struct WideTable {
    pub scores: Vec<String>,
    pub rows: Vec<WideRow>,
}

impl WideTable {
    pub fn column(&self, score: &str) -> Option<Vec<Option<f64>>> {
        let i = self.scores.iter().position(|s| s == score)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = ::csv::WriterBuilder::new().terminator(::csv::Terminator::Any(b'\n')).from_writer(w);
        let mut header = vec!["x", "y", "group", "pair_type"];
        header.extend(self.scores.iter().map(String::as_str));
        let io = |e: ::csv::Error| Error::Io(e.to_string());
        out.write_record(&header).map_err(io)?;
        for r in &self.rows {
            let mut record = vec![r.x.clone(), r.y.clone(), r.group.clone(), r.pair_type.to_string()];
            record.extend(r.values.iter().map(|v| v.map(super::format_value).unwrap_or_default()));
            out.write_record(&record).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }
}
