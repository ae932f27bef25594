//! Alternating conditional expectations.
//!
//! Transforms `θ(b)` and `φ(a)` are refined in turn by conditional
//! expectation, `φ ← E[θ | a]` then `θ ← E[φ | b]` (standardised). Factors
//! use level means; numerics use a centred running mean over the sorted
//! predictor. The score is the largest correlation reached, starting from
//! the untransformed (linear) pair, so it never falls below the canonical
//! correlation. Two numerics are run with either as the response and the
//! larger result kept. For two factors the iteration's fixed point is the first
//! correspondence-analysis correlation, which is returned directly.

use super::cancor::correspondence_correlation;
use super::numeric::{mean, raw_pearson};
use super::{compact, Values};
use crate::error::{Error, Result};

pub const MIN_ACE_OBS: usize = 10;
pub const ACE_MAX_ITER: usize = 25;
/// Convergence threshold on the change of the squared correlation.
pub const ACE_TOL: f64 = 1e-6;
/// Running-mean window as a fraction of the sample size.
pub const ACE_SPAN: f64 = 0.3;

enum Smoother {
    Levels { codes: Vec<usize>, k: usize },
    Running { order: Vec<usize>, runs: Vec<(usize, usize)>, window: usize },
}

impl Smoother {
    fn new(v: Values) -> Smoother {
        match v {
            Values::Factor(c) => {
                let (codes, k) = compact(c);
                Smoother::Levels { codes, k }
            }
            Values::Numeric(x) => {
                let mut order: Vec<usize> = (0..x.len()).collect();
                order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
                let mut runs = Vec::new();
                let mut i = 0;
                while i < order.len() {
                    let mut j = i + 1;
                    while j < order.len() && x[order[j]] == x[order[i]] {
                        j += 1;
                    }
                    runs.push((i, j));
                    i = j;
                }
                let window = (ACE_SPAN * x.len() as f64).ceil() as usize;
                Smoother::Running { order, runs, window: window.max(1) }
            }
        }
    }

    /// Distinct predictor values (levels or tie runs).
    fn distinct(&self) -> usize {
        match self {
            Smoother::Levels { k, .. } => *k,
            Smoother::Running { runs, .. } => runs.len(),
        }
    }

    /// Estimate of `E[v | predictor]` at every observation.
    fn smooth(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Smoother::Levels { codes, k } => {
                let mut sums = vec![0.0; *k];
                let mut counts = vec![0usize; *k];
                for (&c, &x) in codes.iter().zip(v) {
                    sums[c] += x;
                    counts[c] += 1;
                }
                codes.iter().map(|&c| sums[c] / counts[c] as f64).collect()
            }
            Smoother::Running { order, runs, window } => {
                let n = order.len();
                let mut prefix = vec![0.0; n + 1];
                for (i, &o) in order.iter().enumerate() {
                    prefix[i + 1] = prefix[i] + v[o];
                }
                let half_lo = (window - 1) / 2;
                let half_hi = window / 2;
                let mut sorted: Vec<f64> = (0..n)
                    .map(|i| {
                        let lo = i.saturating_sub(half_lo);
                        let hi = (i + half_hi + 1).min(n);
                        (prefix[hi] - prefix[lo]) / (hi - lo) as f64
                    })
                    .collect();
                // equal predictor values share one fitted value
                for &(s, e) in runs {
                    if e - s > 1 {
                        let m = sorted[s..e].iter().sum::<f64>() / (e - s) as f64;
                        sorted[s..e].fill(m);
                    }
                }
                let mut out = vec![0.0; n];
                for (i, &o) in order.iter().enumerate() {
                    out[o] = sorted[i];
                }
                out
            }
        }
    }
}

/// Centres and scales to unit (population) variance; `None` if constant.
fn standardise(v: &[f64]) -> Option<Vec<f64>> {
    let m = mean(v);
    let sd = (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64).sqrt();
    (sd > 1e-12 * (1.0 + m.abs())).then(|| v.iter().map(|x| (x - m) / sd).collect())
}

pub fn ace_correlation(a: Values, b: Values) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < MIN_ACE_OBS && !matches!((a, b), (Values::Factor(_), Values::Factor(_))) {
        return Err(Error::TooFewObservations {
            needed: MIN_ACE_OBS,
            got: a.len(),
        });
    }
    Ok(match (a, b) {
        (Values::Factor(g), Values::Factor(h)) => correspondence_correlation(g, h),
        (Values::Factor(_), Values::Numeric(y)) => directed(a, y),
        (Values::Numeric(y), Values::Factor(_)) => directed(b, y),
        // the iteration is not symmetric in its start, so run both ways
        (Values::Numeric(x), Values::Numeric(y)) => match (directed(a, y), directed(b, x)) {
            (Some(p), Some(q)) => Some(p.max(q)),
            (p, q) => p.or(q),
        },
    })
}

/// ACE with the numeric response `y` and predictor `a`.
fn directed(a: Values, y: &[f64]) -> Option<f64> {
    let sa = Smoother::new(a);
    let sb = Smoother::new(Values::Numeric(y));
    if sa.distinct() < 2 || sb.distinct() < 2 {
        return None;
    }
    let mut theta = standardise(y)?;

    let mut best = match a {
        Values::Numeric(x) => raw_pearson(x, y).map_or(0.0, f64::abs),
        Values::Factor(_) => 0.0,
    };
    let mut prev_r2 = f64::NAN;
    for _ in 0..ACE_MAX_ITER {
        let Some(phi) = standardise(&sa.smooth(&theta)) else { break };
        let r = raw_pearson(&phi, &theta).unwrap_or(0.0);
        best = best.max(r);
        let Some(next) = standardise(&sb.smooth(&phi)) else { break };
        theta = next;
        let r = raw_pearson(&phi, &theta).unwrap_or(0.0);
        best = best.max(r);
        if (r * r - prev_r2).abs() < ACE_TOL {
            break;
        }
        prev_r2 = r * r;
    }
    Some(best.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::cancor::canonical_correlation;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_linear() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 / 7.0).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
        let v = ace_correlation(Values::Numeric(&x), Values::Numeric(&y)).unwrap().unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn parabola() {
        let n = 200;
        let x: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let v = ace_correlation(Values::Numeric(&x), Values::Numeric(&y)).unwrap().unwrap();
        assert!(v >= 0.99, "ace = {v}");
    }

    #[test]
    fn factor_pair_equals_cancor() {
        let a = [0, 1, 2, 0, 1, 2, 2, 1, 0, 0, 2, 1];
        let b = [1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1];
        let ace = ace_correlation(Values::Factor(&a), Values::Factor(&b)).unwrap().unwrap();
        let cc = canonical_correlation(Values::Factor(&a), Values::Factor(&b)).unwrap().unwrap();
        assert_abs_diff_eq!(ace, cc, epsilon = 1e-12);
    }

    #[test]
    fn mixed_dominates_cancor() {
        let g = [0, 0, 1, 1, 2, 2, 0, 1, 2, 0, 1, 2];
        let x = [0.3, 1.2, 0.8, 2.2, 0.1, 0.4, 0.9, 1.7, -0.2, 0.5, 1.1, 0.0];
        let ace = ace_correlation(Values::Numeric(&x), Values::Factor(&g)).unwrap().unwrap();
        let cc = canonical_correlation(Values::Numeric(&x), Values::Factor(&g)).unwrap().unwrap();
        assert!(ace >= cc - 1e-9);
    }

    #[test]
    fn too_few() {
        let x = [1.0, 2.0, 3.0];
        assert!(matches!(
            ace_correlation(Values::Numeric(&x), Values::Numeric(&x)),
            Err(Error::TooFewObservations { .. })
        ));
    }
}
