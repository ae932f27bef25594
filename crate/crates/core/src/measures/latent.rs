//! Polychoric and polyserial correlations by two-step maximum likelihood.
//!
//! Thresholds come from the inverse normal of cumulative marginal
//! proportions; the latent correlation then maximises the likelihood over
//! `[-RHO_BOUND, RHO_BOUND]`.

use super::bvn::{bvn_cdf, norm_cdf, norm_quantile};
use super::compact;
use super::contingency::ContingencyTable;
use super::numeric::mean;
use crate::error::{Error, Result};

pub const RHO_BOUND: f64 = 0.999;

#[derive(Debug, Clone, PartialEq)]
pub struct LatentThresholds {
    pub tau_x: Vec<f64>,
    /// Empty for polyserial fits, where the second variable is observed.
    pub tau_y: Vec<f64>,
    pub rho: f64,
}

/// Brent's derivative-free minimiser on `[a, b]`.
fn brent_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let golden = 0.5 * (3.0 - 5f64.sqrt());
    let eps = f64::EPSILON.sqrt();
    let mut x = a + golden * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = eps * x.abs() + tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let mut r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            r = e;
            e = d;
            if p.abs() < (0.5 * q * r).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < xm { b - x } else { a - x };
            d = golden * e;
        }
        let u = x + if d.abs() >= tol1 { d } else { tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    x
}

/// Maximises `loglik` over the admissible correlation interval: a coarse
/// grid picks the bracket, Brent refines inside it.
fn maximise_rho(loglik: impl Fn(f64) -> f64) -> f64 {
    let step = 0.1;
    let best = (-10..=10)
        .map(|i| (i as f64 * step).clamp(-RHO_BOUND, RHO_BOUND))
        .map(|r| (r, loglik(r)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
        .0;
    let lo = (best - step).max(-RHO_BOUND);
    let hi = (best + step).min(RHO_BOUND);
    let rho = brent_min(|r| -loglik(r), lo, hi, 1e-8);
    if loglik(best) > loglik(rho) {
        best
    } else {
        rho
    }
}

fn thresholds(margins: &[u64], n: u64) -> Vec<f64> {
    let mut cum = 0u64;
    margins[..margins.len() - 1]
        .iter()
        .map(|&m| {
            cum += m;
            norm_quantile(cum as f64 / n as f64)
        })
        .collect()
}

fn with_infinities(tau: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(tau.len() + 2);
    v.push(f64::NEG_INFINITY);
    v.extend_from_slice(tau);
    v.push(f64::INFINITY);
    v
}

const MIN_PROB: f64 = 1e-300;

pub fn polychoric_fit(a: &[usize], b: &[usize]) -> Result<Option<LatentThresholds>> {
    let t = ContingencyTable::from_codes(a, b)?;
    let (r, c) = t.shape();
    if r < 2 || c < 2 {
        return Ok(None);
    }
    let tau_x = thresholds(t.row_margins(), t.n());
    let tau_y = thresholds(t.col_margins(), t.n());
    let (ex, ey) = (with_infinities(&tau_x), with_infinities(&tau_y));
    let counts = t.counts();
    let loglik = |rho: f64| -> f64 {
        let grid: Vec<Vec<f64>> = ex
            .iter()
            .map(|&h| ey.iter().map(|&k| bvn_cdf(h, k, rho)).collect())
            .collect();
        let mut ll = 0.0;
        for i in 0..r {
            for j in 0..c {
                let n = counts[i][j];
                if n == 0 {
                    continue;
                }
                let p = grid[i + 1][j + 1] - grid[i][j + 1] - grid[i + 1][j] + grid[i][j];
                ll += n as f64 * p.max(MIN_PROB).ln();
            }
        }
        ll
    };
    let rho = maximise_rho(loglik);
    Ok(Some(LatentThresholds { tau_x, tau_y, rho }))
}

/// Latent correlation of two ordinal variables given as level codes.
pub fn polychoric(a: &[usize], b: &[usize]) -> Result<Option<f64>> {
    Ok(polychoric_fit(a, b)?.map(|f| f.rho))
}

pub fn polyserial_fit(a: &[usize], x: &[f64]) -> Result<Option<LatentThresholds>> {
    if a.len() != x.len() {
        return Err(Error::LengthMismatch(a.len(), x.len()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    // single-column table gives the ordinal margins with empty levels dropped
    let t = ContingencyTable::from_codes(a, &vec![0; a.len()])?;
    if t.shape().0 < 2 {
        return Ok(None);
    }
    let m = mean(x);
    let sd = (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / x.len() as f64).sqrt();
    if !(sd > 0.0) {
        return Ok(None);
    }
    let z: Vec<f64> = x.iter().map(|v| (v - m) / sd).collect();
    let tau_x = thresholds(t.row_margins(), t.n());
    let ex = with_infinities(&tau_x);
    // observed codes mapped to compact category indices
    let (cat, _) = compact(a);
    let loglik = |rho: f64| -> f64 {
        let s = (1.0 - rho * rho).sqrt();
        cat.iter()
            .zip(&z)
            .map(|(&j, &zi)| {
                let upper = norm_cdf((ex[j + 1] - rho * zi) / s);
                let lower = norm_cdf((ex[j] - rho * zi) / s);
                (upper - lower).max(MIN_PROB).ln()
            })
            .sum()
    };
    let rho = maximise_rho(loglik);
    Ok(Some(LatentThresholds {
        tau_x,
        tau_y: Vec::new(),
        rho,
    }))
}

/// Latent correlation between an ordinal variable (level codes) and a numeric one.
pub fn polyserial(a: &[usize], x: &[f64]) -> Result<Option<f64>> {
    Ok(polyserial_fit(a, x)?.map(|f| f.rho))
}
