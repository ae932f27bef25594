//! Rescaling to the unit square and hexagonal binning.

use crate::error::{Error, Result};

/// Above this many points the cloud is hex-binned.
pub const BINNING_THRESHOLD: usize = 250;
/// Hexagons per row (and rows) of the binning lattice.
pub const HEX_GRID: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct BinnedCloud {
    pub points: Vec<[f64; 2]>,
    /// Number of original observations behind each point.
    pub weights: Vec<f64>,
}

impl BinnedCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn rescale(v: &[f64]) -> Option<Vec<f64>> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    (span > 0.0 && span.is_finite()).then(|| v.iter().map(|x| ((x - lo) / span).clamp(0.0, 1.0)).collect())
}

/// Cell of the staggered lattice nearest to `(x, y)`; odd rows are shifted
/// half a cell to the right, which makes the nearest-centre regions hexagons.
fn hex_cell(x: f64, y: f64) -> usize {
    let g = HEX_GRID as f64;
    let centre = |r: usize, c: usize| {
        let shift = if r % 2 == 1 { 0.5 } else { 0.0 };
        ((c as f64 + 0.5 + shift) / g, (r as f64 + 0.5) / g)
    };
    let r0 = ((y * g - 0.5).floor().max(0.0) as usize).min(HEX_GRID - 1);
    let mut best = (f64::INFINITY, 0usize);
    for r in [r0, (r0 + 1).min(HEX_GRID - 1)] {
        let shift = if r % 2 == 1 { 0.5 } else { 0.0 };
        let c0 = ((x * g - 0.5 - shift).floor().max(0.0) as usize).min(HEX_GRID - 1);
        for c in [c0, (c0 + 1).min(HEX_GRID - 1)] {
            let (cx, cy) = centre(r, c);
            let d = (x - cx).powi(2) + (y - cy).powi(2);
            if d < best.0 {
                best = (d, r * HEX_GRID + c);
            }
        }
    }
    best.1
}

/// Rescales both axes to `[0, 1]`; clouds larger than
/// [`BINNING_THRESHOLD`] are hex-binned, each bin represented by the
/// centroid of its members and weighted by their count.
pub fn bin_cloud(x: &[f64], y: &[f64]) -> Result<BinnedCloud> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewObservations { needed: 3, got: x.len() });
    }
    let (Some(sx), Some(sy)) = (rescale(x), rescale(y)) else {
        return Err(Error::DegenerateCloud);
    };
    if x.len() <= BINNING_THRESHOLD {
        return Ok(BinnedCloud {
            points: sx.iter().zip(&sy).map(|(&a, &b)| [a, b]).collect(),
            weights: vec![1.0; x.len()],
        });
    }
    let mut sums = vec![(0.0, 0.0, 0usize); HEX_GRID * HEX_GRID];
    for (&a, &b) in sx.iter().zip(&sy) {
        let cell = &mut sums[hex_cell(a, b)];
        cell.0 += a;
        cell.1 += b;
        cell.2 += 1;
    }
    let (points, weights) = sums
        .iter()
        .filter(|c| c.2 > 0)
        .map(|&(a, b, k)| ([a / k as f64, b / k as f64], k as f64))
        .unzip();
    Ok(BinnedCloud { points, weights })
}
