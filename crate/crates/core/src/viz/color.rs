//! Value-to-colour mapping.

use crate::registry::ScoreRange;

pub const NA_COLOR: &str = "#808080";

const BLUE: [u8; 3] = [0x21, 0x66, 0xAC];
const WHITE: [u8; 3] = [0xFF, 0xFF, 0xFF];
const RED: [u8; 3] = [0xB2, 0x18, 0x2B];

/// Categorical colours for groups or scores in point displays.
pub const PALETTE: [&str; 8] = [
    "#1B9E77", "#D95F02", "#7570B3", "#E7298A", "#66A61E", "#E6AB02", "#A6761D", "#666666",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// Blue through white to red over `[-1, 1]`.
    Diverging,
    /// White to red over `[0, 1]`.
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorScale {
    pub range: ScoreRange,
    pub kind: ScaleKind,
}

fn mix(a: [u8; 3], b: [u8; 3], t: f64) -> String {
    let c: Vec<u8> = (0..3)
        .map(|i| (a[i] as f64 + (b[i] as f64 - a[i] as f64) * t).round() as u8)
        .collect();
    format!("#{:02X}{:02X}{:02X}", c[0], c[1], c[2])
}

impl ColorScale {
    pub fn for_range(range: ScoreRange) -> ColorScale {
        let kind = match range {
            ScoreRange::Signed => ScaleKind::Diverging,
            ScoreRange::Unit => ScaleKind::Sequential,
        };
        ColorScale { range, kind }
    }

    /// Fill for a value; missing values get [`NA_COLOR`]. Values outside
    /// the domain are clamped.
    pub fn color(&self, value: Option<f64>) -> String {
        let Some(v) = value.filter(|v| v.is_finite()) else {
            return NA_COLOR.to_string();
        };
        let (lo, hi) = self.range.bounds();
        let v = v.clamp(lo, hi);
        match self.kind {
            ScaleKind::Diverging if v < 0.0 => mix(WHITE, BLUE, -v),
            ScaleKind::Diverging => mix(WHITE, RED, v),
            ScaleKind::Sequential => mix(WHITE, RED, (v - lo) / (hi - lo)),
        }
    }
}
