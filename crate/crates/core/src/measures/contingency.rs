//! Cross-tabulation of two factors and the association measures defined on it.
//!
//! Rows follow the level order of the first factor, columns the second;
//! levels with no observations are dropped. Concordance counts treat level
//! order as ordinal.

use super::compact;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    row_margins: Vec<u64>,
    col_margins: Vec<u64>,
    n: u64,
    chi2: f64,
    concordant: u64,
    discordant: u64,
    /// Pairs in the same row but different columns.
    ties_x: u64,
    /// Pairs in the same column but different rows.
    ties_y: u64,
}

impl ContingencyTable {
    /// Cross-tabulates two level-code vectors (same length, no missing).
    pub fn from_codes(a: &[usize], b: &[usize]) -> Result<ContingencyTable> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        if a.is_empty() {
            return Err(Error::EmptyInput);
        }
        let (ra, r) = compact(a);
        let (rb, c) = compact(b);
        let mut counts = vec![vec![0u64; c]; r];
        for (&i, &j) in ra.iter().zip(&rb) {
            counts[i][j] += 1;
        }
        ContingencyTable::from_counts(counts)
    }

    /// Builds a table from raw counts; empty rows and columns are dropped.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<ContingencyTable> {
        let width = counts.first().map_or(0, |r| r.len());
        if counts.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidParameter("ragged contingency table".into()));
        }
        let keep_cols: Vec<usize> = (0..width)
            .filter(|&j| counts.iter().any(|r| r[j] > 0))
            .collect();
        let counts: Vec<Vec<u64>> = counts
            .into_iter()
            .filter(|r| r.iter().any(|&v| v > 0))
            .map(|r| keep_cols.iter().map(|&j| r[j]).collect())
            .collect();
        if counts.is_empty() {
            return Err(Error::EmptyInput);
        }
        let (r, c) = (counts.len(), counts[0].len());
        let row_margins: Vec<u64> = counts.iter().map(|row| row.iter().sum()).collect();
        let col_margins: Vec<u64> = (0..c).map(|j| counts.iter().map(|row| row[j]).sum()).collect();
        let n: u64 = row_margins.iter().sum();

        let nf = n as f64;
        let mut chi2 = 0.0;
        for i in 0..r {
            for j in 0..c {
                let e = row_margins[i] as f64 * col_margins[j] as f64 / nf;
                let d = counts[i][j] as f64 - e;
                chi2 += d * d / e;
            }
        }

        // below[i][j] = sum of counts strictly below-right / below-left
        let (mut concordant, mut discordant) = (0u64, 0u64);
        for i in 0..r {
            for j in 0..c {
                let nij = counts[i][j];
                if nij == 0 {
                    continue;
                }
                for row in &counts[i + 1..] {
                    concordant += nij * row[j + 1..].iter().sum::<u64>();
                    discordant += nij * row[..j].iter().sum::<u64>();
                }
            }
        }
        let same_pairs = |v: u64| v * v.saturating_sub(1) / 2;
        let cell_ties: u64 = counts.iter().flatten().map(|&v| same_pairs(v)).sum();
        let ties_x = row_margins.iter().map(|&v| same_pairs(v)).sum::<u64>() - cell_ties;
        let ties_y = col_margins.iter().map(|&v| same_pairs(v)).sum::<u64>() - cell_ties;

        Ok(ContingencyTable {
            counts,
            row_margins,
            col_margins,
            n,
            chi2,
            concordant,
            discordant,
            ties_x,
            ties_y,
        })
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }
    pub fn row_margins(&self) -> &[u64] {
        &self.row_margins
    }
    pub fn col_margins(&self) -> &[u64] {
        &self.col_margins
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn chi2(&self) -> f64 {
        self.chi2
    }
    pub fn concordant(&self) -> u64 {
        self.concordant
    }
    pub fn discordant(&self) -> u64 {
        self.discordant
    }
    pub fn ties_x(&self) -> u64 {
        self.ties_x
    }
    pub fn ties_y(&self) -> u64 {
        self.ties_y
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.counts.len(), self.counts[0].len())
    }

    pub fn transpose(&self) -> ContingencyTable {
        let (r, c) = self.shape();
        let t = (0..c).map(|j| (0..r).map(|i| self.counts[i][j]).collect()).collect();
        ContingencyTable::from_counts(t).expect("non-empty table")
    }

    fn c_minus_d(&self) -> f64 {
        self.concordant as f64 - self.discordant as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcordanceMethod {
    TauA,
    TauB,
    TauC,
    GkGamma,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

pub fn concordance_measure(t: &ContingencyTable, method: ConcordanceMethod) -> Option<f64> {
    let s = t.c_minus_d();
    let (c, d) = (t.concordant as f64, t.discordant as f64);
    let n = t.n as f64;
    let v = match method {
        ConcordanceMethod::TauA => {
            let pairs = n * (n - 1.0) / 2.0;
            if pairs <= 0.0 {
                return None;
            }
            s / pairs
        }
        ConcordanceMethod::TauB => {
            let denom = ((c + d + t.ties_x as f64) * (c + d + t.ties_y as f64)).sqrt();
            if denom <= 0.0 {
                return None;
            }
            s / denom
        }
        ConcordanceMethod::TauC => {
            let (r, k) = t.shape();
            let m = r.min(k) as f64;
            if m < 2.0 {
                return None;
            }
            2.0 * m * s / (n * n * (m - 1.0))
        }
        ConcordanceMethod::GkGamma => {
            if c + d <= 0.0 {
                return None;
            }
            s / (c + d)
        }
    };
    finite(v).map(|v| v.clamp(-1.0, 1.0))
}

/// Goodman-Kruskal tau of columns given rows (proportional reduction in
/// prediction error for the column variable).
fn gk_tau_directional(t: &ContingencyTable) -> Option<f64> {
    let n = t.n as f64;
    let col_term: f64 = t.col_margins.iter().map(|&c| (c as f64).powi(2)).sum::<f64>() / n;
    let denom = n - col_term;
    if denom <= 0.0 {
        return None;
    }
    let within: f64 = t
        .counts
        .iter()
        .zip(&t.row_margins)
        .map(|(row, &rm)| row.iter().map(|&v| (v as f64).powi(2)).sum::<f64>() / rm as f64)
        .sum();
    Some((within - col_term) / denom)
}

/// Mean of the two directional Goodman-Kruskal tau values.
pub fn gk_tau(t: &ContingencyTable) -> Option<f64> {
    let a = gk_tau_directional(t)?;
    let b = gk_tau_directional(&t.transpose())?;
    finite((a + b) / 2.0).map(|v| v.clamp(0.0, 1.0))
}

fn entropy(counts: impl Iterator<Item = u64>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Mean of U(x|y) and U(y|x) with natural-log entropies.
pub fn uncertainty_coef(t: &ContingencyTable) -> Option<f64> {
    let n = t.n as f64;
    let hx = entropy(t.row_margins.iter().copied(), n);
    let hy = entropy(t.col_margins.iter().copied(), n);
    if hx <= 0.0 || hy <= 0.0 {
        return None;
    }
    let hxy = entropy(t.counts.iter().flatten().copied(), n);
    let mi = (hx + hy - hxy).max(0.0);
    finite((mi / hx + mi / hy) / 2.0).map(|v| v.clamp(0.0, 1.0))
}

/// Pearson's contingency coefficient divided by its maximum `√((m-1)/m)`.
pub fn contingency_coef(t: &ContingencyTable) -> Option<f64> {
    let (r, c) = t.shape();
    let m = r.min(c) as f64;
    if m < 2.0 {
        return None;
    }
    let raw = (t.chi2 / (t.chi2 + t.n as f64)).sqrt();
    let max = ((m - 1.0) / m).sqrt();
    finite(raw / max).map(|v| v.clamp(0.0, 1.0))
}

/// Kendall's W for two rank vectors (level order, mid-ranked), rescaled
/// from `[0, 1]` to `[-1, 1]` as `2W - 1`.
pub fn kendall_w(a: &[usize], b: &[usize]) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = a.len() as f64;
    let to_f = |v: &[usize]| v.iter().map(|&c| c as f64).collect::<Vec<_>>();
    let (fa, fb) = (to_f(a), to_f(b));
    let ra = super::numeric::mid_ranks(&fa);
    let rb = super::numeric::mid_ranks(&fb);
    let tie_term = |v: &[f64]| -> f64 {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        let mut acc = 0.0;
        let mut i = 0;
        while i < s.len() {
            let mut j = i;
            while j < s.len() && s[j] == s[i] {
                j += 1;
            }
            let t = (j - i) as f64;
            acc += t * t * t - t;
            i = j;
        }
        acc
    };
    let (ta, tb) = (tie_term(&fa), tie_term(&fb));
    let full = n * n * n - n;
    if ta >= full || tb >= full {
        return Ok(None);
    }
    let m = 2.0;
    let mean_sum = m * (n + 1.0) / 2.0;
    let s: f64 = ra
        .iter()
        .zip(&rb)
        .map(|(x, y)| (x + y - mean_sum).powi(2))
        .sum();
    let w = 12.0 * s / (m * m * full - m * (ta + tb));
    Ok(finite(2.0 * w - 1.0).map(|v| v.clamp(-1.0, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn toy() -> ContingencyTable {
        ContingencyTable::from_counts(vec![vec![2, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn identical_factors_diagonal() {
        let a = [0, 1, 0, 1, 1, 0, 0, 1, 1, 0];
        let t = ContingencyTable::from_codes(&a, &a).unwrap();
        assert_eq!(t.counts(), &[vec![5, 0], vec![0, 5]]);
        assert_eq!(t.discordant(), 0);
        assert_eq!(concordance_measure(&t, ConcordanceMethod::TauB), Some(1.0));
        assert_eq!(concordance_measure(&t, ConcordanceMethod::GkGamma), Some(1.0));
        assert_eq!(gk_tau(&t), Some(1.0));
        assert_abs_diff_eq!(uncertainty_coef(&t).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn toy_counts() {
        let t = toy();
        assert_eq!((t.concordant(), t.discordant()), (4, 1));
        assert_eq!(t.n(), 6);
    }

    #[test]
    fn single_level_degenerate() {
        let t = ContingencyTable::from_codes(&[0, 0, 0, 0], &[0, 1, 0, 1]).unwrap();
        assert_eq!(t.shape(), (1, 2));
        assert_eq!((t.concordant(), t.discordant()), (0, 0));
        assert_eq!(concordance_measure(&t, ConcordanceMethod::TauC), None);
        assert_eq!(concordance_measure(&t, ConcordanceMethod::GkGamma), None);
        assert_eq!(contingency_coef(&t), None);
    }

    #[test]
    fn empty_levels_dropped() {
        let t = ContingencyTable::from_codes(&[0, 2, 2], &[5, 1, 1]).unwrap();
        assert_eq!(t.counts(), &[vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn empty_input() {
        assert_eq!(ContingencyTable::from_codes(&[], &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn independence_product() {
        let t = ContingencyTable::from_counts(vec![vec![2, 4, 6], vec![4, 8, 12]]).unwrap();
        assert_abs_diff_eq!(t.chi2(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(contingency_coef(&t).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(uncertainty_coef(&t).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gk_tau(&t).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_contingency_coef_is_one() {
        // k x k diagonal: chi2 = n (k - 1)
        for k in 2..6 {
            let counts = (0..k)
                .map(|i| (0..k).map(|j| if i == j { 3 } else { 0 }).collect())
                .collect();
            let t = ContingencyTable::from_counts(counts).unwrap();
            assert_abs_diff_eq!(t.chi2(), (3 * k * (k - 1)) as f64, epsilon = 1e-9);
            assert_abs_diff_eq!(contingency_coef(&t).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn kendall_w_extremes() {
        let a = [0, 1, 2, 3, 4];
        assert_abs_diff_eq!(kendall_w(&a, &a).unwrap().unwrap(), 1.0, epsilon = 1e-12);
        let rev = [4, 3, 2, 1, 0];
        assert_abs_diff_eq!(kendall_w(&a, &rev).unwrap().unwrap(), -1.0, epsilon = 1e-12);
        assert_eq!(kendall_w(&a, &[2, 2, 2, 2, 2]).unwrap(), None);
    }
}
