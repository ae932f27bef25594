//! Geometric graphs on a binned cloud: minimum spanning tree, convex hull
//! and alpha complex.

use delaunator::{triangulate, Point, EMPTY};

use super::binning::BinnedCloud;

/// Percentile of MST edge lengths used as the alpha radius.
pub const ALPHA_PERCENTILE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct GeomGraphs {
    pub mst_edges: Vec<(usize, usize, f64)>,
    /// Convex hull vertices, counterclockwise, collinear points dropped.
    pub hull: Vec<usize>,
    pub alpha_edges: Vec<(usize, usize)>,
    /// Delaunay triangles whose three sides are all alpha edges.
    pub alpha_triangles: Vec<[usize; 3]>,
    pub alpha_value: f64,
}

pub(crate) fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Exact Euclidean MST by Prim's algorithm on the complete graph.
pub fn minimum_spanning_tree(points: &[[f64; 2]]) -> Vec<(usize, usize, f64)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for j in 1..n {
        best[j] = (dist(points[0], points[j]), 0);
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut len = f64::INFINITY;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best[j].0 < len) {
                next = j;
                len = best[j].0;
            }
        }
        in_tree[next] = true;
        let from = best[next].1;
        edges.push((from.min(next), from.max(next), len));
        for j in 0..n {
            if !in_tree[j] {
                let d = dist(points[next], points[j]);
                if d < best[j].0 {
                    best[j] = (d, next);
                }
            }
        }
    }
    edges
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[p]) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

pub fn polygon_area(points: &[[f64; 2]], ring: &[usize]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    let mut a = 0.0;
    for k in 0..ring.len() {
        let p = points[ring[k]];
        let q = points[ring[(k + 1) % ring.len()]];
        a += p[0] * q[1] - q[0] * p[1];
    }
    (a / 2.0).abs()
}

/// Linear-interpolation quantile of unsorted data.
pub fn quantile(v: &[f64], p: f64) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let h = (s.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    s[lo] + (h - lo as f64) * (s[hi] - s[lo])
}

pub fn build_graphs(cloud: &BinnedCloud) -> GeomGraphs {
    let pts = &cloud.points;
    let mst_edges = minimum_spanning_tree(pts);
    let hull = convex_hull(pts);
    let lengths: Vec<f64> = mst_edges.iter().map(|e| e.2).collect();
    let alpha_value = if lengths.is_empty() { 0.0 } else { quantile(&lengths, ALPHA_PERCENTILE) };

    let input: Vec<Point> = pts.iter().map(|p| Point { x: p[0], y: p[1] }).collect();
    let tri = triangulate(&input);
    let within = |a: usize, b: usize| dist(pts[a], pts[b]) <= alpha_value;
    let mut alpha_edges: Vec<(usize, usize)> = Vec::new();
    for e in 0..tri.triangles.len() {
        let opposite = tri.halfedges[e];
        // each undirected edge once
        if opposite != EMPTY && opposite < e {
            continue;
        }
        let a = tri.triangles[e];
        let b = tri.triangles[if e % 3 == 2 { e - 2 } else { e + 1 }];
        if within(a, b) {
            alpha_edges.push((a.min(b), a.max(b)));
        }
    }
    alpha_edges.extend(mst_edges.iter().filter(|e| e.2 <= alpha_value).map(|e| (e.0, e.1)));
    alpha_edges.sort_unstable();
    alpha_edges.dedup();
    let alpha_triangles = tri
        .triangles
        .chunks_exact(3)
        .filter(|t| within(t[0], t[1]) && within(t[1], t[2]) && within(t[2], t[0]))
        .map(|t| [t[0], t[1], t[2]])
        .collect();
    GeomGraphs {
        mst_edges,
        hull,
        alpha_edges,
        alpha_triangles,
        alpha_value,
    }
}

impl GeomGraphs {
    pub fn mst_length(&self) -> f64 {
        self.mst_edges.iter().map(|e| e.2).sum()
    }

    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for &(a, b, _) in &self.mst_edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Area and boundary length of the union of alpha triangles.
    pub fn alpha_area_perimeter(&self, points: &[[f64; 2]]) -> (f64, f64) {
        let mut area = 0.0;
        let mut sides: Vec<(usize, usize)> = Vec::new();
        for t in &self.alpha_triangles {
            area += polygon_area(points, t);
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                sides.push((a.min(b), a.max(b)));
            }
        }
        sides.sort_unstable();
        let mut perimeter = 0.0;
        let mut i = 0;
        while i < sides.len() {
            let mut j = i + 1;
            while j < sides.len() && sides[j] == sides[i] {
                j += 1;
            }
            if j - i == 1 {
                perimeter += dist(points[sides[i].0], points[sides[i].1]);
            }
            i = j;
        }
        (area, perimeter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_mst() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let mst = minimum_spanning_tree(&pts);
        assert_eq!(mst.len(), 3);
        assert_abs_diff_eq!(mst.iter().map(|e| e.2).sum::<f64>(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn triangle() {
        let pts = [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]];
        let mst = minimum_spanning_tree(&pts);
        let total: f64 = mst.iter().map(|e| e.2).sum();
        assert_abs_diff_eq!(total, 7.0, epsilon = 1e-12);
        let mut hull = convex_hull(&pts);
        assert_eq!(hull.len(), 3);
        hull.sort();
        assert_eq!(hull, vec![0, 1, 2]);
    }

    #[test]
    fn hull_counterclockwise_and_convex() {
        let pts = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.5], [2.0, 2.0], [0.0, 2.0], [1.0, 1.0]];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        for k in 0..hull.len() {
            let (a, b, c) = (hull[k], hull[(k + 1) % 4], hull[(k + 2) % 4]);
            assert!(cross(pts[a], pts[b], pts[c]) > 0.0);
        }
        assert_abs_diff_eq!(polygon_area(&pts, &hull), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn collinear_hull_is_segment() {
        let pts = [[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]];
        let hull = convex_hull(&pts);
        assert_eq!(polygon_area(&pts, &hull), 0.0);
    }
}
