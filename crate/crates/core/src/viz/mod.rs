//! Matrix (bullseye glyph) and linear displays of a score table.

pub mod color;
pub mod svg;

pub use color::{ColorScale, ScaleKind, NA_COLOR};
pub use svg::{Node, RenderDocument};

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::pairwise::{format_value, group_cmp, PairwiseRow, PairwiseTable, ALL_GROUP};
use crate::registry::{score_range, ScoreRange};
use crate::seriation::{order_pairs, order_variables, OrderName};
use color::PALETTE;

/// Inner (bullseye) radius as a fraction of the glyph radius.
pub const INNER_RADIUS: f64 = 0.5;
pub const MATRIX_SIZE: (f64, f64) = (800.0, 800.0);
/// Height of one pair row in the linear display.
pub const ROW_HEIGHT: f64 = 40.0;
const LEGEND_WIDTH: f64 = 170.0;
const LABEL_WIDTH: f64 = 170.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geom {
    Tile,
    Point,
}

impl std::str::FromStr for Geom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Geom> {
        match s {
            "tile" => Ok(Geom::Tile),
            "point" => Ok(Geom::Point),
            other => Err(Error::InvalidParameter(format!("unknown geom `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlotOptions {
    /// Canvas size; `None` picks the display's default.
    pub size: Option<(f64, f64)>,
    /// Attach a tooltip to every wedge, tile and point.
    pub interactive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WedgeSpec {
    pub score: String,
    pub group: String,
    pub value: Option<f64>,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlyphSpec {
    /// Grid position, row below the diagonal (`row > col`).
    pub row: usize,
    pub col: usize,
    pub x: String,
    pub y: String,
    pub inner: Vec<WedgeSpec>,
    pub outer: Vec<WedgeSpec>,
    pub inner_radius: f64,
}

fn scale_for(score: &str) -> ColorScale {
    ColorScale::for_range(score_range(score).unwrap_or(ScoreRange::Signed))
}

fn tooltip(x: &str, y: &str, score: &str, group: &str, value: Option<f64>) -> String {
    let v = value.map(format_value).unwrap_or_else(|| "NA".to_string());
    format!("x: {x}\ny: {y}\nscore: {score}\ngroup: {group}\nvalue: {v}")
}

/// Splits the full turn into `parts.len()` equal wedges starting at 3 o'clock.
fn equal_wedges(parts: Vec<(String, String, Option<f64>)>) -> Vec<WedgeSpec> {
    let m = parts.len() as f64;
    parts
        .into_iter()
        .enumerate()
        .map(|(i, (score, group, value))| WedgeSpec {
            score,
            group,
            value,
            start: TAU * i as f64 / m,
            end: TAU * (i + 1) as f64 / m,
        })
        .collect()
}

fn distinct_scores(rows: &[PairwiseRow]) -> Vec<String> {
    let mut s: Vec<String> = rows.iter().map(|r| r.score.clone()).collect();
    s.sort();
    s.dedup();
    s
}

/// Glyphs for the lower triangle of the `vars × vars` grid. Inner wedges
/// hold the pair's ungrouped scores; outer wedges hold every
/// (named group, score) combination, groups outermost, in table order.
pub fn glyph_specs(t: &PairwiseTable, vars: &[String]) -> Vec<GlyphSpec> {
    let groups = t.named_groups();
    let by_pair: BTreeMap<(String, String), &[PairwiseRow]> = t
        .pair_slices()
        .into_iter()
        .map(|rows| ((rows[0].x.clone(), rows[0].y.clone()), rows))
        .collect();
    let mut out = Vec::new();
    for row in 1..vars.len() {
        for col in 0..row {
            let (a, b) = (&vars[row], &vars[col]);
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            let Some(rows) = by_pair.get(&key) else { continue };
            let scores = distinct_scores(rows);
            let find = |s: &str, g: &str| rows.iter().find(|r| r.score == s && r.group == g);
            let inner = scores
                .iter()
                .filter_map(|s| find(s, ALL_GROUP).map(|r| (s.clone(), ALL_GROUP.to_string(), r.value)))
                .collect();
            let outer = groups
                .iter()
                .flat_map(|g| scores.iter().map(move |s| (s, g)))
                .map(|(s, g)| (s.clone(), g.clone(), find(s, g).and_then(|r| r.value)))
                .collect();
            out.push(GlyphSpec {
                row,
                col,
                x: key.0,
                y: key.1,
                inner: equal_wedges(inner),
                outer: equal_wedges(outer),
                inner_radius: INNER_RADIUS,
            });
        }
    }
    out
}

/// Per-score colour bars plus the missing-value swatch.
fn legend(nodes: &mut Vec<Node>, scores: &[String], x0: f64, mut y: f64) {
    nodes.push(Node::GroupStart { class: "legend".into(), attrs: Vec::new() });
    for s in scores {
        let scale = scale_for(s);
        let (lo, hi) = scale.range.bounds();
        nodes.push(Node::Text { x: x0, y, text: s.clone(), anchor: "start", size: 12.0 });
        y += 14.0;
        let steps = 11;
        let w = 120.0 / steps as f64;
        for k in 0..steps {
            let v = lo + (hi - lo) * k as f64 / (steps - 1) as f64;
            nodes.push(Node::Rect {
                x: x0 + k as f64 * w,
                y,
                w,
                h: 12.0,
                fill: scale.color(Some(v)),
                class: "legend-key".into(),
                tooltip: None,
            });
        }
        y += 22.0;
        nodes.push(Node::Text { x: x0, y, text: format_value(lo), anchor: "start", size: 10.0 });
        nodes.push(Node::Text { x: x0 + 120.0, y, text: format_value(hi), anchor: "end", size: 10.0 });
        y += 20.0;
    }
    nodes.push(Node::Rect {
        x: x0,
        y,
        w: 12.0,
        h: 12.0,
        fill: NA_COLOR.into(),
        class: "legend-key".into(),
        tooltip: None,
    });
    nodes.push(Node::Text { x: x0 + 18.0, y: y + 6.0, text: "NA".into(), anchor: "start", size: 10.0 });
    nodes.push(Node::GroupEnd);
}

/// Lower-triangular matrix of bullseye glyphs over the ordered variables.
pub fn plot_matrix(t: &PairwiseTable, order: OrderName, opts: &PlotOptions) -> Result<RenderDocument> {
    if t.is_empty() {
        return Err(Error::EmptyTable);
    }
    let vars = order_variables(t, order);
    let (width, height) = opts.size.unwrap_or(MATRIX_SIZE);
    let k = vars.len() as f64;
    let margin = 10.0;
    let cell = ((width - LEGEND_WIDTH - 2.0 * margin) / k).min((height - 2.0 * margin) / k);
    let radius = 0.45 * cell;
    let mut nodes = Vec::new();

    for (i, v) in vars.iter().enumerate() {
        let c = margin + (i as f64 + 0.5) * cell;
        nodes.push(Node::Text { x: c, y: c, text: v.clone(), anchor: "middle", size: (cell / 7.0).clamp(8.0, 14.0) });
    }
    for g in glyph_specs(t, &vars) {
        let cx = margin + (g.col as f64 + 0.5) * cell;
        let cy = margin + (g.row as f64 + 0.5) * cell;
        nodes.push(Node::GroupStart {
            class: "glyph".into(),
            attrs: vec![("data-x".into(), g.x.clone()), ("data-y".into(), g.y.clone())],
        });
        let ri = radius * g.inner_radius;
        let rings = [("wedge inner", &g.inner, 0.0, ri), ("wedge outer", &g.outer, ri, radius)];
        for (class, wedges, r0, r1) in rings {
            // without a doughnut the bullseye takes the whole glyph
            let r1 = if class == "wedge inner" && g.outer.is_empty() { radius } else { r1 };
            for w in wedges {
                nodes.push(Node::Wedge {
                    class: class.into(),
                    cx,
                    cy,
                    r_inner: r0,
                    r_outer: r1,
                    start: w.start,
                    end: w.end,
                    fill: scale_for(&w.score).color(w.value),
                    tooltip: opts.interactive.then(|| tooltip(&g.x, &g.y, &w.score, &w.group, w.value)),
                });
            }
        }
        nodes.push(Node::GroupEnd);
    }
    legend(&mut nodes, &t.scores(), width - LEGEND_WIDTH + 10.0, margin + 10.0);
    Ok(RenderDocument {
        width,
        height,
        title: "pairwise scores".into(),
        nodes,
    })
}

/// One row per pair, `x:y` labels on the left, values on a shared axis.
pub fn plot_linear(t: &PairwiseTable, geom: Geom, order: OrderName, opts: &PlotOptions) -> Result<RenderDocument> {
    if t.is_empty() {
        return Err(Error::EmptyTable);
    }
    let pairs = order_pairs(t, order);
    let n_rows = pairs.len() as f64;
    let (width, height) = opts.size.unwrap_or((800.0, ROW_HEIGHT * (n_rows + 1.0)));
    let header = height / (n_rows + 1.0);
    let row_h = header;
    let left = LABEL_WIDTH;
    let right = width - LEGEND_WIDTH;
    let mut nodes = Vec::new();

    let scores = t.scores();
    let groups: Vec<String> = {
        let mut g: Vec<String> = t.rows().iter().map(|r| r.group.clone()).collect();
        g.sort_by(|a, b| group_cmp(a, b));
        g.dedup();
        g
    };
    let columns: Vec<(String, String)> = scores
        .iter()
        .flat_map(|s| groups.iter().map(move |g| (s.clone(), g.clone())))
        .filter(|(s, g)| t.rows().iter().any(|r| &r.score == s && &r.group == g))
        .collect();
    let lookup: BTreeMap<(&str, &str, &str, &str), Option<f64>> = t
        .rows()
        .iter()
        .map(|r| ((r.x.as_str(), r.y.as_str(), r.score.as_str(), r.group.as_str()), r.value))
        .collect();
    let signed = scores.iter().any(|s| score_range(s) != Some(ScoreRange::Unit));
    let (lo, hi) = if signed { (-1.0, 1.0) } else { (0.0, 1.0) };

    match geom {
        Geom::Tile => {
            let w = (right - left) / columns.len() as f64;
            for (c, (s, g)) in columns.iter().enumerate() {
                let label = if groups.len() > 1 { format!("{s} {g}") } else { s.clone() };
                nodes.push(Node::Text { x: left + (c as f64 + 0.5) * w, y: header / 2.0, text: label, anchor: "middle", size: 11.0 });
            }
            for (i, (x, y)) in pairs.iter().enumerate() {
                let top = header + i as f64 * row_h;
                nodes.push(Node::Text { x: left - 8.0, y: top + row_h / 2.0, text: format!("{x}:{y}"), anchor: "end", size: 12.0 });
                nodes.push(Node::GroupStart { class: "pair-row".into(), attrs: vec![("data-x".into(), x.clone()), ("data-y".into(), y.clone())] });
                for (c, (s, g)) in columns.iter().enumerate() {
                    let v = lookup.get(&(x.as_str(), y.as_str(), s.as_str(), g.as_str())).copied().flatten();
                    nodes.push(Node::Rect {
                        x: left + c as f64 * w,
                        y: top,
                        w,
                        h: row_h,
                        fill: scale_for(s).color(v),
                        class: "tile".into(),
                        tooltip: opts.interactive.then(|| tooltip(x, y, s, g, v)),
                    });
                }
                nodes.push(Node::GroupEnd);
            }
            legend(&mut nodes, &scores, right + 10.0, header);
        }
        Geom::Point => {
            let pos = |v: f64| left + (v.clamp(lo, hi) - lo) / (hi - lo) * (right - left);
            for k in 0..=4 {
                let v = lo + (hi - lo) * k as f64 / 4.0;
                nodes.push(Node::Line { x1: pos(v), y1: header, x2: pos(v), y2: height });
                nodes.push(Node::Text { x: pos(v), y: header / 2.0, text: format_value(v), anchor: "middle", size: 10.0 });
            }
            // colour by group when the table is grouped, else by score
            let by_group = groups.len() > 1;
            let keys: Vec<String> = if by_group { groups.clone() } else { scores.clone() };
            let colour = |key: &str| PALETTE[keys.iter().position(|k| k == key).unwrap_or(0) % PALETTE.len()];
            for (i, (x, y)) in pairs.iter().enumerate() {
                let cy = header + (i as f64 + 0.5) * row_h;
                nodes.push(Node::Text { x: left - 8.0, y: cy, text: format!("{x}:{y}"), anchor: "end", size: 12.0 });
                nodes.push(Node::GroupStart { class: "pair-row".into(), attrs: vec![("data-x".into(), x.clone()), ("data-y".into(), y.clone())] });
                for (s, g) in &columns {
                    let Some(v) = lookup.get(&(x.as_str(), y.as_str(), s.as_str(), g.as_str())).copied().flatten() else {
                        continue;
                    };
                    nodes.push(Node::Circle {
                        cx: pos(v),
                        cy,
                        r: 5.0,
                        fill: colour(if by_group { g } else { s }).into(),
                        class: "point".into(),
                        tooltip: opts.interactive.then(|| tooltip(x, y, s, g, Some(v))),
                    });
                }
                nodes.push(Node::GroupEnd);
            }
            nodes.push(Node::GroupStart { class: "legend".into(), attrs: Vec::new() });
            for (k, key) in keys.iter().enumerate() {
                let ly = header + 10.0 + 18.0 * k as f64;
                nodes.push(Node::Circle { cx: right + 16.0, cy: ly, r: 5.0, fill: colour(key).into(), class: "legend-key".into(), tooltip: None });
                nodes.push(Node::Text { x: right + 28.0, y: ly, text: key.clone(), anchor: "start", size: 11.0 });
            }
            nodes.push(Node::GroupEnd);
        }
    }
    Ok(RenderDocument {
        width,
        height,
        title: "pairwise scores".into(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairwise::PairType;

    fn grouped() -> PairwiseTable {
        let mut rows = Vec::new();
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            for (g, v) in [("g1", Some(0.2)), ("g2", None), ("all", Some(-0.5))] {
                rows.push(PairwiseRow::new(x, y, "pearson", g, v, PairType::Nn));
            }
        }
        PairwiseTable::new(rows).unwrap()
    }

    #[test]
    fn single_pair_layout() {
        let t = PairwiseTable::new(vec![PairwiseRow::new("a", "b", "pearson", "all", Some(0.3), PairType::Nn)]).unwrap();
        let vars = vec!["a".to_string(), "b".to_string()];
        let g = glyph_specs(&t, &vars);
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].row, g[0].col), (1, 0));
        assert_eq!(g[0].inner.len(), 1);
        assert!(g[0].outer.is_empty());
    }

    #[test]
    fn wedge_partition() {
        let t = grouped();
        let vars = t.variables();
        for g in glyph_specs(&t, &vars) {
            assert_eq!(g.inner.len(), 1);
            assert_eq!(g.outer.len(), 2);
            assert!((g.outer[0].start - 0.0).abs() < 1e-12);
            assert!((g.outer[1].end - TAU).abs() < 1e-12);
            assert_eq!(g.outer[0].group, "g1");
        }
    }

    #[test]
    fn empty_table() {
        let t = PairwiseTable::empty();
        assert_eq!(plot_matrix(&t, OrderName::None, &PlotOptions::default()), Err(Error::EmptyTable));
        assert_eq!(plot_linear(&t, Geom::Tile, OrderName::None, &PlotOptions::default()), Err(Error::EmptyTable));
    }

    #[test]
    fn tooltips_only_when_interactive() {
        let t = grouped();
        let plain = plot_matrix(&t, OrderName::SeriateMaxAbs, &PlotOptions::default()).unwrap().to_svg();
        assert!(!plain.contains("<title>"));
        let opts = PlotOptions { interactive: true, ..Default::default() };
        let html = plot_matrix(&t, OrderName::SeriateMaxAbs, &opts).unwrap().to_html();
        assert_eq!(html.matches("<title>").count(), 1 + 3 * 3);
    }

    #[test]
    fn linear_rows() {
        let t = grouped();
        let doc = plot_linear(&t, Geom::Point, OrderName::SeriateMaxAbs, &PlotOptions::default()).unwrap();
        assert_eq!(doc.height, ROW_HEIGHT * 4.0);
        let svg = doc.to_svg();
        assert_eq!(svg.matches("class=\"point\"").count(), 6);
        assert!(svg.contains("a:b"));
    }
}
