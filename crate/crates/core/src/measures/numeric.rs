//! Correlation and dependence scores for two numeric vectors.

use crate::error::{Error, Result};

/// Fewer complete pairs than this yields a missing correlation.
pub const MIN_CORRELATION_OBS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    Spearman,
    Kendall,
}

fn check_len(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(())
}

pub(crate) fn clamp_signed(v: f64) -> f64 {
    v.clamp(-1.0, 1.0)
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Product-moment correlation without the length/size gate.
pub(crate) fn raw_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    let r = sxy / (sxx * syy).sqrt();
    r.is_finite().then(|| clamp_signed(r))
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_len(x, y)?;
    if x.len() < MIN_CORRELATION_OBS {
        return Ok(None);
    }
    Ok(raw_pearson(x, y))
}

/// Average ranks (1-based), ties share the mean of their positions.
pub fn mid_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && x[idx[j]] == x[idx[i]] {
            j += 1;
        }
        let r = (i + j + 1) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

pub fn rank_correlation(x: &[f64], y: &[f64], method: RankMethod) -> Result<Option<f64>> {
    check_len(x, y)?;
    if x.len() < MIN_CORRELATION_OBS {
        return Ok(None);
    }
    Ok(match method {
        RankMethod::Spearman => raw_pearson(&mid_ranks(x), &mid_ranks(y)),
        RankMethod::Kendall => kendall_tau_b(x, y),
    })
}

/// Number of tied pairs implied by a sorted run structure.
fn tied_pairs<T: PartialEq>(sorted: impl Iterator<Item = T>) -> u64 {
    let mut total = 0u64;
    let mut run = 0u64;
    let mut prev: Option<T> = None;
    for v in sorted {
        if prev.as_ref() == Some(&v) {
            run += 1;
        } else {
            total += run * run.saturating_sub(1) / 2;
            run = 1;
        }
        prev = Some(v);
    }
    total + run * run.saturating_sub(1) / 2
}

/// Counts inversions while merge-sorting `v`.
fn count_swaps(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (l, r) = v.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_swaps(l, bl) + count_swaps(r, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    let k2 = k + mid - i;
    buf[k2..k2 + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

/// Tie-corrected Kendall tau via Knight's O(n log n) algorithm.
fn kendall_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as u64;
    let n0 = n * (n - 1) / 2;
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));
    let tx = tied_pairs(idx.iter().map(|&i| x[i].to_bits()));
    let txy = tied_pairs(idx.iter().map(|&i| (x[i].to_bits(), y[i].to_bits())));
    let mut ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let mut buf = vec![0.0; ys.len()];
    let swaps = count_swaps(&mut ys, &mut buf);
    let ty = tied_pairs(ys.iter().map(|v| v.to_bits()));
    // concordant - discordant
    let s = n0 as i64 - tx as i64 - ty as i64 + txy as i64 - 2 * swaps as i64;
    let denom = ((n0 - tx) as f64 * (n0 - ty) as f64).sqrt();
    (denom > 0.0).then(|| clamp_signed(s as f64 / denom))
}

fn centered_distances(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = (x[i] - x[j]).abs();
        }
    }
    let row: Vec<f64> = (0..n).map(|i| d[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64).collect();
    let grand = row.iter().sum::<f64>() / n as f64;
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] += grand - row[i] - row[j];
        }
    }
    d
}

/// Distance correlation: square root of dCov²(x,y)/√(dVar²(x)·dVar²(y)),
/// using double-centred distance matrices (V-statistics).
pub fn distance_correlation(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_len(x, y)?;
    if x.len() < MIN_CORRELATION_OBS {
        return Ok(None);
    }
    let a = centered_distances(x);
    let b = centered_distances(y);
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(p, q)| p * q).sum::<f64>();
    let (vxy, vxx, vyy) = (dot(&a, &b), dot(&a, &a), dot(&b, &b));
    if vxx <= 0.0 || vyy <= 0.0 {
        return Ok(None);
    }
    let r2 = (vxy / (vxx * vyy).sqrt()).max(0.0);
    Ok(Some(r2.sqrt().min(1.0)))
}
