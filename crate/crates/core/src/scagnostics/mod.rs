//! Graph-theoretic scatterplot diagnostics for numeric pairs.

pub mod binning;
pub mod graphs;

pub use binning::{bin_cloud, BinnedCloud};
pub use graphs::{build_graphs, GeomGraphs};

use graphs::{dist, polygon_area, quantile};

use crate::error::{Error, Result};
use crate::registry::SCAGNOSTIC_NAMES;

/// Incident MST edges this close to a straight line count as striated.
pub const STRIATION_COS: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Scagnostics {
    pub outlying: Option<f64>,
    pub skewed: Option<f64>,
    pub clumpy: Option<f64>,
    pub sparse: Option<f64>,
    pub striated: Option<f64>,
    pub convex: Option<f64>,
    pub skinny: Option<f64>,
    pub stringy: Option<f64>,
    pub monotonic: Option<f64>,
}

impl Scagnostics {
    /// Scores paired with their names, in canonical order.
    pub fn named(&self) -> [(&'static str, Option<f64>); 9] {
        let v = [
            self.outlying,
            self.skewed,
            self.clumpy,
            self.sparse,
            self.striated,
            self.convex,
            self.skinny,
            self.stringy,
            self.monotonic,
        ];
        std::array::from_fn(|i| (SCAGNOSTIC_NAMES[i], v[i]))
    }
}

fn unit(v: f64) -> Option<f64> {
    v.is_finite().then(|| v.clamp(0.0, 1.0))
}

/// Spearman correlation of weighted points (weights act as replication counts).
fn weighted_spearman(x: &[f64], y: &[f64], w: &[f64]) -> Option<f64> {
    let ranks = |v: &[f64]| -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let (mut i, mut below) = (0, 0.0);
        while i < idx.len() {
            let mut j = i;
            let mut tie = 0.0;
            while j < idx.len() && v[idx[j]] == v[idx[i]] {
                tie += w[idx[j]];
                j += 1;
            }
            for &k in &idx[i..j] {
                r[k] = below + (tie + 1.0) / 2.0;
            }
            below += tie;
            i = j;
        }
        r
    };
    let (rx, ry) = (ranks(x), ranks(y));
    let total: f64 = w.iter().sum();
    let mx = rx.iter().zip(w).map(|(r, w)| r * w).sum::<f64>() / total;
    let my = ry.iter().zip(w).map(|(r, w)| r * w).sum::<f64>() / total;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for k in 0..w.len() {
        let (dx, dy) = (rx[k] - mx, ry[k] - my);
        sxy += w[k] * dx * dy;
        sxx += w[k] * dx * dx;
        syy += w[k] * dy * dy;
    }
    let r = sxy / (sxx * syy).sqrt();
    r.is_finite().then(|| r.clamp(-1.0, 1.0))
}

/// Largest over MST edges of `1 - (longest edge in the smaller side) / edge`,
/// where removing the edge splits the tree in two. Edges whose smaller side
/// is a single vertex are skipped.
fn clumpy(n: usize, edges: &[(usize, usize, f64)]) -> f64 {
    let mut adj = vec![Vec::new(); n];
    for (k, &(a, b, _)) in edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    // collects (vertex count, longest edge) of the component of `start`
    // once edge `cut` is removed
    let side = |start: usize, cut: usize| -> (usize, f64) {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let (mut count, mut longest) = (0, 0.0f64);
        while let Some(v) = stack.pop() {
            count += 1;
            for &(u, k) in &adj[v] {
                if k == cut || seen[u] {
                    continue;
                }
                seen[u] = true;
                longest = longest.max(edges[k].2);
                stack.push(u);
            }
        }
        (count, longest)
    };
    let mut best = 0.0f64;
    for (k, &(a, b, len)) in edges.iter().enumerate() {
        if len <= 0.0 {
            continue;
        }
        let (na, la) = side(a, k);
        let (nb, lb) = side(b, k);
        let runt = match na.cmp(&nb) {
            std::cmp::Ordering::Less => (na, la),
            std::cmp::Ordering::Greater => (nb, lb),
            std::cmp::Ordering::Equal => (na, la.max(lb)),
        };
        if runt.0 < 2 {
            continue;
        }
        best = best.max(1.0 - runt.1 / len);
    }
    best
}

fn scores_from(cloud: &BinnedCloud) -> Scagnostics {
    let pts = &cloud.points;
    let n = pts.len();
    let g = build_graphs(cloud);
    let lengths: Vec<f64> = g.mst_edges.iter().map(|e| e.2).collect();
    let total = g.mst_length();
    let (q10, q25, q50, q75, q90) = (
        quantile(&lengths, 0.10),
        quantile(&lengths, 0.25),
        quantile(&lengths, 0.50),
        quantile(&lengths, 0.75),
        quantile(&lengths, 0.90),
    );

    let cutoff = q75 + 1.5 * (q75 - q25);
    let outlying = if total > 0.0 {
        unit(lengths.iter().filter(|&&l| l > cutoff).sum::<f64>() / total)
    } else {
        Some(0.0)
    };
    let skewed = if q90 > q10 { unit((q90 - q50) / (q90 - q10)) } else { Some(0.0) };
    let sparse = unit(q90);

    let degrees = g.degrees(n);
    let mut incident = vec![Vec::new(); n];
    for &(a, b, _) in &g.mst_edges {
        incident[a].push(b);
        incident[b].push(a);
    }
    let striated_count = (0..n)
        .filter(|&v| degrees[v] == 2)
        .filter(|&v| {
            let (p, q) = (pts[incident[v][0]], pts[incident[v][1]]);
            let c = pts[v];
            let (l1, l2) = (dist(c, p), dist(c, q));
            if l1 == 0.0 || l2 == 0.0 {
                return false;
            }
            let cos = ((p[0] - c[0]) * (q[0] - c[0]) + (p[1] - c[1]) * (q[1] - c[1])) / (l1 * l2);
            cos.abs() >= STRIATION_COS
        })
        .count();
    let striated = unit(striated_count as f64 / n as f64);

    let leaves = degrees.iter().filter(|&&d| d == 1).count();
    let twos = degrees.iter().filter(|&&d| d == 2).count();
    let stringy = if n > leaves { unit(twos as f64 / (n - leaves) as f64) } else { None };

    let hull_area = polygon_area(pts, &g.hull);
    let (alpha_area, alpha_perimeter) = g.alpha_area_perimeter(pts);
    let (convex, skinny) = if hull_area > 0.0 {
        let skinny = if alpha_perimeter > 0.0 {
            1.0 - (4.0 * std::f64::consts::PI * alpha_area).sqrt() / alpha_perimeter
        } else {
            1.0
        };
        (unit(alpha_area / hull_area), unit(skinny))
    } else {
        (None, None)
    };

    let xs: Vec<f64> = pts.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p[1]).collect();
    let monotonic = weighted_spearman(&xs, &ys, &cloud.weights).and_then(|r| unit(r * r));

    Scagnostics {
        outlying,
        skewed,
        clumpy: unit(clumpy(n, &g.mst_edges)),
        sparse,
        striated,
        convex,
        skinny,
        stringy,
        monotonic,
    }
}

/// All nine scores; a constant axis makes every score missing.
pub fn scagnostics(x: &[f64], y: &[f64]) -> Result<Scagnostics> {
    match bin_cloud(x, y) {
        Ok(cloud) => Ok(scores_from(&cloud)),
        Err(Error::DegenerateCloud) => Ok(Scagnostics::default()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn increasing_is_monotonic() {
        let x: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v.powi(3) + v).collect();
        let s = scagnostics(&x, &y).unwrap();
        assert_abs_diff_eq!(s.monotonic.unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn line_is_stringy() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let s = scagnostics(&x, &x).unwrap();
        assert_eq!(s.stringy, Some(1.0));
        assert_eq!(s.convex, None);
        assert_eq!(s.skinny, None);
    }

    #[test]
    fn constant_all_missing() {
        let s = scagnostics(&[1.0, 2.0, 3.0, 4.0], &[2.0; 4]).unwrap();
        assert!(s.named().iter().all(|(_, v)| v.is_none()));
    }

    #[test]
    fn names_in_order() {
        let names: Vec<&str> = Scagnostics::default().named().iter().map(|p| p.0).collect();
        assert_eq!(names, SCAGNOSTIC_NAMES);
    }

    #[test]
    fn two_clusters_are_clumpy() {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..10 {
            let t = i as f64 * 0.01;
            x.extend([t, 10.0 + t]);
            y.extend([(t * 7.0).sin() * 0.01, 10.0 + (t * 5.0).cos() * 0.01]);
        }
        let s = scagnostics(&x, &y).unwrap();
        assert!(s.clumpy.unwrap() > 0.9);
    }
}
