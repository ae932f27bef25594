#![allow(dead_code)]

use pairscore::{Dataset, Schema};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn penguins() -> Dataset {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/penguins.csv");
    Dataset::load_csv(path, &Schema::default()).expect("penguins fixture")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tie-corrected Kendall tau from all n(n-1)/2 pairs.
pub fn kendall_oracle(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    let (mut s, mut nx, mut ny) = (0i64, 0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let a = (x[i] - x[j]).partial_cmp(&0.0).unwrap() as i64;
            let b = (y[i] - y[j]).partial_cmp(&0.0).unwrap() as i64;
            s += a * b;
            nx += a.abs();
            ny += b.abs();
        }
    }
    let d = ((nx * ny) as f64).sqrt();
    (d > 0.0).then(|| s as f64 / d)
}

/// Distance correlation from the triple-sum form of the V-statistics.
pub fn dcor_oracle(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let dcov2 = |u: &[f64], v: &[f64]| {
        let k = u.len();
        let a = |i: usize, j: usize| (u[i] - u[j]).abs();
        let b = |i: usize, j: usize| (v[i] - v[j]).abs();
        let (mut s1, mut sa, mut sb, mut s3) = (0.0, 0.0, 0.0, 0.0);
        for i in 0..k {
            for j in 0..k {
                s1 += a(i, j) * b(i, j);
                sa += a(i, j);
                sb += b(i, j);
                for l in 0..k {
                    s3 += a(i, j) * b(i, l);
                }
            }
        }
        s1 / (n * n) + (sa / (n * n)) * (sb / (n * n)) - 2.0 * s3 / (n * n * n)
    };
    let vxy = dcov2(x, y);
    let (vx, vy) = (dcov2(x, x), dcov2(y, y));
    if vx <= 0.0 || vy <= 0.0 {
        return None;
    }
    Some((vxy.max(0.0) / (vx * vy).sqrt()).sqrt())
}

/// Minimum spanning tree length by enumerating all labelled trees via
/// Prüfer sequences.
pub fn mst_oracle(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return dist(points[0], points[1]);
    }
    let total = n.pow((n - 2) as u32);
    let mut best = f64::INFINITY;
    let mut seq = vec![0usize; n - 2];
    for code in 0..total {
        let mut c = code;
        for s in seq.iter_mut() {
            *s = c % n;
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut len = 0.0;
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            len += dist(points[leaf], points[s]);
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        len += dist(points[rest[0]], points[rest[1]]);
        best = best.min(len);
    }
    best
}

pub fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

pub fn mid_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|v| {
            let below = x.iter().filter(|w| *w < v).count() as f64;
            let equal = x.iter().filter(|w| *w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

pub fn spearman_oracle(x: &[f64], y: &[f64]) -> f64 {
    pearson_oracle(&mid_ranks(x), &mid_ranks(y))
}
