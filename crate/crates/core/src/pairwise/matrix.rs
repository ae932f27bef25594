use std::collections::{BTreeMap, HashSet};

use super::{PairType, PairwiseRow, PairwiseTable, ALL_GROUP};
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// Square matrix with named rows/columns; cells may be missing.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix {
    labels: Vec<String>,
    values: Vec<Option<f64>>,
}

impl LabeledMatrix {
    /// Row-major `values` of length `labels.len()²`.
    pub fn new(labels: Vec<String>, values: Vec<Option<f64>>) -> Result<Self> {
        if values.len() != labels.len() * labels.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(LabeledMatrix { labels, values })
    }

    pub fn from_rows(labels: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != labels.len() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::ShapeMismatch);
        }
        let values = rows.iter().flatten().map(|v| Some(*v)).collect();
        LabeledMatrix::new(labels, values)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.dim() + j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl PairwiseTable {
    /// Converts a symmetric matrix into one ungrouped row per unordered label pair.
    pub fn from_matrix(m: &LabeledMatrix, score: &str, pair_type: PairType) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in m.labels() {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabels(l.clone()));
            }
        }
        let p = m.dim();
        let mut rows = Vec::with_capacity(p * p.saturating_sub(1) / 2);
        for i in 0..p {
            for j in (i + 1)..p {
                let (a, b) = (m.get(i, j), m.get(j, i));
                let symmetric = match (a, b) {
                    (Some(a), Some(b)) => (a - b).abs() <= SYMMETRY_TOL || (a.is_nan() && b.is_nan()),
                    (None, None) => true,
                    _ => false,
                };
                if !symmetric {
                    return Err(Error::AsymmetricInput(m.labels[i].clone(), m.labels[j].clone()));
                }
                rows.push(PairwiseRow::new(
                    m.labels[i].clone(),
                    m.labels[j].clone(),
                    score,
                    ALL_GROUP,
                    a,
                    pair_type,
                ));
            }
        }
        PairwiseTable::new(rows)
    }

    /// Symmetric matrix over the variables mentioned in the table. Each cell
    /// holds the value of the first row (in canonical order) for that pair;
    /// the diagonal is 1 and pairs without rows are missing.
    pub fn to_matrix(&self) -> LabeledMatrix {
        let labels = self.variables();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let p = labels.len();
        let mut values = vec![None; p * p];
        for i in 0..p {
            values[i * p + i] = Some(1.0);
        }
        let mut filled = vec![false; p * p];
        for r in &self.rows {
            let (i, j) = (index[r.x.as_str()], index[r.y.as_str()]);
            if !filled[i * p + j] {
                filled[i * p + j] = true;
                values[i * p + j] = r.value;
                values[j * p + i] = r.value;
            }
        }
        LabeledMatrix { labels, values }
    }
}
