//! Maximal information coefficient and total information coefficient.
//!
//! The characteristic matrix holds, for every grid shape `a × b` with
//! `a·b ≤ B(n) = n^alpha`, the best mutual information found for that shape
//! divided by `ln min(a, b)`. For each row count one axis is equipartitioned
//! and the other axis is optimised exactly over a bounded set of candidate
//! cut points ("clumps") by dynamic programming; both axis roles are tried.

use crate::error::{Error, Result};

pub const MIN_MIC_OBS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicParams {
    /// Exponent of the grid-size bound `B(n) = n^alpha`.
    pub alpha: f64,
    /// Clump factor: at most `c · max_columns` candidate column boundaries.
    pub c: f64,
}

impl Default for MicParams {
    fn default() -> Self {
        MicParams { alpha: 0.6, c: 15.0 }
    }
}

impl MicParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!("alpha must be in (0, 1], got {}", self.alpha)));
        }
        if !(self.c >= 1.0) {
            return Err(Error::InvalidParameter(format!("c must be >= 1, got {}", self.c)));
        }
        Ok(())
    }

    pub fn grid_bound(&self, n: usize) -> usize {
        ((n as f64).powf(self.alpha).floor() as usize).max(4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicScores {
    pub mic: f64,
    /// Mean of the characteristic matrix entries (TIC divided by the
    /// number of admissible grid shapes), so it lies in `[0, 1]`.
    pub tic: f64,
}

/// Normalised scores indexed by `(x bins, y bins)`, both starting at 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicMatrix {
    bound: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl CharacteristicMatrix {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, xb: usize, yb: usize) -> Option<f64> {
        self.entries
            .iter()
            .find(|(a, b, _)| *a == xb && *b == yb)
            .map(|e| e.2)
    }
}

/// Splits items (already sorted by `keys`) into at most `bins` contiguous
/// groups of near-equal size without separating equal keys. Returns a group
/// label per sorted position and the number of groups used.
fn equipartition<K: PartialEq>(keys: &[K], bins: usize) -> (Vec<usize>, usize) {
    let n = keys.len();
    let mut labels = vec![0; n];
    if n == 0 {
        return (labels, 0);
    }
    let mut desired = n as f64 / bins as f64;
    let (mut i, mut current, mut size) = (0usize, 0usize, 0usize);
    while i < n {
        let mut s = 1;
        while i + s < n && keys[i + s] == keys[i] {
            s += 1;
        }
        let grow = ((size + s) as f64 - desired).abs();
        let stay = (size as f64 - desired).abs();
        if size != 0 && grow >= stay && current + 1 < bins {
            current += 1;
            size = 0;
            desired = (n - i) as f64 / (bins - current) as f64;
        }
        labels[i..i + s].fill(current);
        i += s;
        size += s;
    }
    (labels, current + 1)
}

fn sorted_order(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    idx
}

fn entropy_of_counts(counts: &[usize], n: usize) -> f64 {
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Best mutual information for each column count `2..=max_cols`, with the
/// `row_axis` equipartitioned into `rows` bins and `col_axis` optimised.
fn approx_max_mi(
    col_axis: &[f64],
    row_axis: &[f64],
    col_order: &[usize],
    row_order: &[usize],
    rows: usize,
    max_cols: usize,
    clump_factor: f64,
) -> Vec<f64> {
    let n = col_axis.len();
    // row partition
    let row_keys: Vec<u64> = row_order.iter().map(|&i| row_axis[i].to_bits()).collect();
    let (sorted_rows, q) = equipartition(&row_keys, rows);
    let mut row_of = vec![0usize; n];
    for (pos, &i) in row_order.iter().enumerate() {
        row_of[i] = sorted_rows[pos];
    }

    // clumps along the column axis; mixed-row tie runs get private labels
    let mut label = vec![0i64; n];
    let mut fresh = -1i64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && col_axis[col_order[j]] == col_axis[col_order[i]] {
            j += 1;
        }
        let r0 = row_of[col_order[i]];
        let uniform = col_order[i..j].iter().all(|&k| row_of[k] == r0);
        let l = if uniform {
            r0 as i64
        } else {
            fresh -= 1;
            fresh
        };
        label[i..j].fill(l);
        i = j;
    }
    let mut clump = vec![0usize; n];
    for p in 1..n {
        clump[p] = clump[p - 1] + usize::from(label[p] != label[p - 1]);
    }
    let n_clumps = clump[n - 1] + 1;
    let max_clumps = ((clump_factor * max_cols as f64) as usize).max(1);
    if n_clumps > max_clumps {
        let (merged, _) = equipartition(&clump, max_clumps);
        clump = merged;
    }

    // boundaries and cumulative row counts per clump prefix
    let mut bounds = vec![0usize];
    for p in 1..n {
        if clump[p] != clump[p - 1] {
            bounds.push(p);
        }
    }
    bounds.push(n);
    let k = bounds.len() - 1;
    let mut cum = vec![vec![0usize; q]; k + 1];
    for t in 0..k {
        let mut next = cum[t].clone();
        for &idx in &col_order[bounds[t]..bounds[t + 1]] {
            next[row_of[idx]] += 1;
        }
        cum[t + 1] = next;
    }
    let mut row_totals = vec![0usize; q];
    for &r in &row_of {
        row_totals[r] += 1;
    }
    let h_rows = entropy_of_counts(&row_totals, n);

    // column term: sum_r c_r ln(c_r / m) for clumps (s, t]
    let term = |s: usize, t: usize| -> f64 {
        let m = (bounds[t] - bounds[s]) as f64;
        let mut acc = 0.0;
        for r in 0..q {
            let c = (cum[t][r] - cum[s][r]) as f64;
            if c > 0.0 {
                acc += c * (c / m).ln();
            }
        }
        acc
    };
    let mut cost = vec![0.0; (k + 1) * (k + 1)];
    for s in 0..k {
        for t in (s + 1)..=k {
            cost[s * (k + 1) + t] = term(s, t);
        }
    }

    let mut best = Vec::with_capacity(max_cols.saturating_sub(1));
    let mut prev: Vec<f64> = (0..=k).map(|t| if t == 0 { f64::NEG_INFINITY } else { cost[t] }).collect();
    let mut last = h_rows + prev[k] / n as f64;
    for l in 2..=max_cols {
        if l <= k {
            let mut cur = vec![f64::NEG_INFINITY; k + 1];
            for t in l..=k {
                let mut m = f64::NEG_INFINITY;
                for s in (l - 1)..t {
                    let v = prev[s] + cost[s * (k + 1) + t];
                    if v > m {
                        m = v;
                    }
                }
                cur[t] = m;
            }
            prev = cur;
            last = h_rows + prev[k] / n as f64;
        }
        best.push(last.max(0.0));
    }
    best
}

/// Mutual information table for one axis assignment: `out[rows - 2][cols - 2]`.
fn one_direction(col_axis: &[f64], row_axis: &[f64], bound: usize, c: f64) -> Vec<Vec<f64>> {
    let col_order = sorted_order(col_axis);
    let row_order = sorted_order(row_axis);
    (2..=bound / 2)
        .map(|rows| approx_max_mi(col_axis, row_axis, &col_order, &row_order, rows, bound / rows, c))
        .collect()
}

pub fn characteristic_matrix(x: &[f64], y: &[f64], params: &MicParams) -> Result<CharacteristicMatrix> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    params.validate()?;
    if x.len() < MIN_MIC_OBS {
        return Err(Error::TooFewObservations {
            needed: MIN_MIC_OBS,
            got: x.len(),
        });
    }
    let bound = params.grid_bound(x.len());
    // rows = y bins, columns = x bins
    let y_rows = one_direction(x, y, bound, params.c);
    // rows = x bins, columns = y bins
    let x_rows = one_direction(y, x, bound, params.c);
    let mut entries = Vec::new();
    for xb in 2..=bound / 2 {
        for yb in 2..=bound / xb {
            let a = y_rows[yb - 2][xb - 2];
            let b = x_rows[xb - 2][yb - 2];
            let score = (a.max(b) / (xb.min(yb) as f64).ln()).clamp(0.0, 1.0);
            entries.push((xb, yb, score));
        }
    }
    Ok(CharacteristicMatrix { bound, entries })
}

pub fn mic(x: &[f64], y: &[f64], params: &MicParams) -> Result<MicScores> {
    let m = characteristic_matrix(x, y, params)?;
    let e = m.entries();
    let mic = e.iter().map(|t| t.2).fold(0.0, f64::max);
    // summed in sorted order so swapping x and y gives the identical value
    let mut scores: Vec<f64> = e.iter().map(|t| t.2).collect();
    scores.sort_by(f64::total_cmp);
    let tic = scores.iter().sum::<f64>() / scores.len() as f64;
    Ok(MicScores { mic, tic })
}
