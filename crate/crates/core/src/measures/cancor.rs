//! First canonical correlation between two variables, one-hot encoding factors.

use nalgebra::DMatrix;

use super::numeric::{mean, MIN_CORRELATION_OBS, raw_pearson};
use super::{compact, Values};
use crate::error::{Error, Result};

/// `sqrt(SSB / SST)` of `x` across the groups given by `codes`.
pub(crate) fn between_fraction(codes: &[usize], x: &[f64]) -> Option<f64> {
    let (g, k) = compact(codes);
    if k < 2 {
        return None;
    }
    let m = mean(x);
    let sst: f64 = x.iter().map(|v| (v - m).powi(2)).sum();
    if !(sst > 0.0) {
        return None;
    }
    let mut sums = vec![0.0; k];
    let mut counts = vec![0usize; k];
    for (&gi, &v) in g.iter().zip(x) {
        sums[gi] += v;
        counts[gi] += 1;
    }
    let ssb: f64 = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| c as f64 * (s / c as f64 - m).powi(2))
        .sum();
    Some((ssb / sst).clamp(0.0, 1.0).sqrt())
}

/// Largest singular value of `D_r^{-1/2} (P - r c') D_c^{-1/2}`.
pub(crate) fn correspondence_correlation(a: &[usize], b: &[usize]) -> Option<f64> {
    let (ra, r) = compact(a);
    let (rb, c) = compact(b);
    if r < 2 || c < 2 {
        return None;
    }
    let n = a.len() as f64;
    let mut p = DMatrix::<f64>::zeros(r, c);
    for (&i, &j) in ra.iter().zip(&rb) {
        p[(i, j)] += 1.0 / n;
    }
    let rows: Vec<f64> = (0..r).map(|i| p.row(i).sum()).collect();
    let cols: Vec<f64> = (0..c).map(|j| p.column(j).sum()).collect();
    let s = DMatrix::from_fn(r, c, |i, j| (p[(i, j)] - rows[i] * cols[j]) / (rows[i] * cols[j]).sqrt());
    let sv = s.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    top.is_finite().then(|| top.clamp(0.0, 1.0))
}

pub fn canonical_correlation(a: Values, b: Values) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(match (a, b) {
        (Values::Numeric(x), Values::Numeric(y)) => {
            if x.len() < MIN_CORRELATION_OBS {
                None
            } else {
                raw_pearson(x, y).map(f64::abs)
            }
        }
        (Values::Factor(g), Values::Numeric(x)) | (Values::Numeric(x), Values::Factor(g)) => {
            between_fraction(g, x)
        }
        (Values::Factor(g), Values::Factor(h)) => correspondence_correlation(g, h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn separated_groups() {
        let v = canonical_correlation(Values::Factor(&[1, 1, 2, 2]), Values::Numeric(&[0.0, 0.0, 1.0, 1.0]));
        assert_eq!(v.unwrap(), Some(1.0));
    }

    #[test]
    fn single_level_missing() {
        let v = canonical_correlation(Values::Factor(&[3, 3, 3]), Values::Numeric(&[0.0, 1.0, 2.0]));
        assert_eq!(v.unwrap(), None);
        let v = canonical_correlation(Values::Factor(&[3, 3, 3]), Values::Factor(&[0, 1, 0]));
        assert_eq!(v.unwrap(), None);
    }

    #[test]
    fn two_by_two_is_abs_phi() {
        // for binary factors the first canonical correlation is |phi|
        let a = [0, 0, 0, 1, 1, 1, 1, 0, 1, 0];
        let b = [0, 1, 0, 1, 1, 0, 1, 0, 1, 1];
        let fa: Vec<f64> = a.iter().map(|&v| v as f64).collect();
        let fb: Vec<f64> = b.iter().map(|&v| v as f64).collect();
        let phi = raw_pearson(&fa, &fb).unwrap().abs();
        let v = canonical_correlation(Values::Factor(&a), Values::Factor(&b)).unwrap().unwrap();
        assert_abs_diff_eq!(v, phi, epsilon = 1e-12);
    }

    #[test]
    fn numeric_pair_abs_pearson() {
        let v = canonical_correlation(Values::Numeric(&[1.0, 2.0, 3.0]), Values::Numeric(&[3.0, 2.0, 1.5]));
        assert!(v.unwrap().unwrap() > 0.9);
    }
}
