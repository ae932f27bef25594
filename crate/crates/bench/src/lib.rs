//! Synthetic inputs shared by the benchmarks.

use pairscore::{Column, Dataset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Correlated normal pair of length `n`.
pub fn normal_pair(n: usize, rho: f64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = (1.0 - rho * rho).sqrt();
    (0..n)
        .map(|_| {
            let a: f64 = rng.sample(StandardNormal);
            let e: f64 = rng.sample(StandardNormal);
            (a, rho * a + s * e)
        })
        .unzip()
}

/// `n` equal-width bins of `x` as factor codes.
pub fn discretise(x: &[f64], levels: usize) -> Vec<usize> {
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    x.iter()
        .map(|v| (((v - lo) / (hi - lo) * levels as f64) as usize).min(levels - 1))
        .collect()
}

/// Mixed dataset with `numeric` numeric and `factors` factor columns plus a
/// three-level `group` factor.
pub fn mixed_dataset(n: usize, numeric: usize, factors: usize, seed: u64) -> Dataset {
    let mut cols = Vec::new();
    for i in 0..numeric {
        let (x, _) = normal_pair(n, 0.0, seed + i as u64);
        cols.push(Column::from_f64(format!("num{i}"), &x));
    }
    for i in 0..factors {
        let (x, _) = normal_pair(n, 0.0, seed + 100 + i as u64);
        let codes = discretise(&x, 3 + i % 3).into_iter().map(Some).collect();
        let levels = (0..3 + i % 3).map(|l| format!("l{l}")).collect();
        cols.push(Column::factor(format!("fac{i}"), codes, levels, false));
    }
    let codes = (0..n).map(|i| Some(i % 3)).collect();
    cols.push(Column::factor("group", codes, vec!["a".into(), "b".into(), "c".into()], false));
    Dataset::new(cols).expect("columns share a length")
}
