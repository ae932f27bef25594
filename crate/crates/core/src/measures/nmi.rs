//! Normalised mutual information maximised over equal-frequency binnings.

use super::numeric::mid_ranks;
use super::{compact, Values};
use crate::error::{Error, Result};

pub const MIN_NMI_OBS: usize = 8;

/// Largest bin count tried for a numeric variable: `⌈n^0.6⌉`.
pub fn max_bins(n: usize) -> usize {
    ((n as f64).powf(0.6).ceil() as usize).max(2)
}

/// Equal-frequency bin index per observation; ties share a bin.
pub fn equal_frequency_bins(x: &[f64], bins: usize) -> Vec<usize> {
    let n = x.len() as f64;
    mid_ranks(x)
        .iter()
        .map(|r| (((r - 1.0) * bins as f64 / n).floor() as usize).min(bins - 1))
        .collect()
}

/// `I(X;Y) / sqrt(H(X) H(Y))` for two code vectors; `None` if either
/// entropy is zero.
pub fn normalised_mi(a: &[usize], b: &[usize]) -> Option<f64> {
    let (ca, ka) = compact(a);
    let (cb, kb) = compact(b);
    let n = a.len() as f64;
    let mut joint = vec![0usize; ka * kb];
    let mut ma = vec![0usize; ka];
    let mut mb = vec![0usize; kb];
    for (&i, &j) in ca.iter().zip(&cb) {
        joint[i * kb + j] += 1;
        ma[i] += 1;
        mb[j] += 1;
    }
    // summed in sorted order so the result does not depend on argument order
    let h = |counts: &[usize]| -> f64 {
        let mut counts = counts.to_vec();
        counts.sort_unstable();
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let (ha, hb, hab) = (h(&ma), h(&mb), h(&joint));
    if ha <= 0.0 || hb <= 0.0 {
        return None;
    }
    let mi = (ha + hb - hab).max(0.0);
    Some((mi / (ha * hb).sqrt()).clamp(0.0, 1.0))
}

fn candidates(v: Values) -> Vec<Vec<usize>> {
    match v {
        Values::Factor(c) => vec![c.to_vec()],
        Values::Numeric(x) => (2..=max_bins(x.len())).map(|k| equal_frequency_bins(x, k)).collect(),
    }
}

pub fn max_nmi(a: Values, b: Values) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < MIN_NMI_OBS {
        return Err(Error::TooFewObservations {
            needed: MIN_NMI_OBS,
            got: a.len(),
        });
    }
    let (ca, cb) = (candidates(a), candidates(b));
    let mut best: Option<f64> = None;
    for x in &ca {
        for y in &cb {
            if let Some(v) = normalised_mi(x, y) {
                best = Some(best.map_or(v, |b| b.max(v)));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identical_factors() {
        let a = [0, 1, 2, 0, 1, 2, 1, 1];
        assert_abs_diff_eq!(max_nmi(Values::Factor(&a), Values::Factor(&a)).unwrap().unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_table_is_zero() {
        let a = [0, 0, 0, 0, 1, 1, 1, 1];
        let b = [0, 1, 0, 1, 0, 1, 0, 1];
        assert_abs_diff_eq!(max_nmi(Values::Factor(&a), Values::Factor(&b)).unwrap().unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bins_keep_ties() {
        let b = equal_frequency_bins(&[1.0, 1.0, 1.0, 2.0, 3.0, 4.0], 3);
        assert_eq!(b[0], b[1]);
        assert_eq!(b[1], b[2]);
        assert!(b.iter().all(|&v| v < 3));
    }

    #[test]
    fn constant_numeric_missing() {
        let x = [1.0; 10];
        let g = [0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        assert_eq!(max_nmi(Values::Numeric(&x), Values::Factor(&g)).unwrap(), None);
    }
}
