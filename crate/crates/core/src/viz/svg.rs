//! A small retained scene that serialises to SVG or standalone HTML.

use std::f64::consts::TAU;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Opens a `<g>` with the given class and data attributes.
    GroupStart { class: String, attrs: Vec<(String, String)> },
    GroupEnd,
    /// Annular sector between `start` and `end` (radians, anticlockwise
    /// from 3 o'clock). `r_inner = 0` gives a pie slice.
    Wedge {
        class: String,
        cx: f64,
        cy: f64,
        r_inner: f64,
        r_outer: f64,
        start: f64,
        end: f64,
        fill: String,
        tooltip: Option<String>,
    },
    Rect { x: f64, y: f64, w: f64, h: f64, fill: String, class: String, tooltip: Option<String> },
    Circle { cx: f64, cy: f64, r: f64, fill: String, class: String, tooltip: Option<String> },
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Text { x: f64, y: f64, text: String, anchor: &'static str, size: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderDocument {
    pub width: f64,
    pub height: f64,
    pub title: String,
    pub nodes: Vec<Node>,
}

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn n(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn point(cx: f64, cy: f64, r: f64, a: f64) -> (f64, f64) {
    (cx + r * a.cos(), cy - r * a.sin())
}

fn wedge_path(cx: f64, cy: f64, ri: f64, ro: f64, start: f64, end: f64) -> String {
    let span = end - start;
    if span >= TAU - 1e-9 {
        // full ring: two half arcs per circle, inner traced the other way
        let mut d = format!(
            "M{} {}A{} {} 0 1 0 {} {}A{} {} 0 1 0 {} {}Z",
            n(cx + ro), n(cy), n(ro), n(ro), n(cx - ro), n(cy), n(ro), n(ro), n(cx + ro), n(cy)
        );
        if ri > 0.0 {
            write!(
                d,
                "M{} {}A{} {} 0 1 1 {} {}A{} {} 0 1 1 {} {}Z",
                n(cx + ri), n(cy), n(ri), n(ri), n(cx - ri), n(cy), n(ri), n(ri), n(cx + ri), n(cy)
            )
            .unwrap();
        }
        return d;
    }
    let large = if span > std::f64::consts::PI { 1 } else { 0 };
    let (x0, y0) = point(cx, cy, ro, start);
    let (x1, y1) = point(cx, cy, ro, end);
    // sweep-flag 0: anticlockwise on screen
    let mut d = format!("M{} {}A{} {} 0 {} 0 {} {}", n(x0), n(y0), n(ro), n(ro), large, n(x1), n(y1));
    if ri > 0.0 {
        let (x2, y2) = point(cx, cy, ri, end);
        let (x3, y3) = point(cx, cy, ri, start);
        write!(d, "L{} {}A{} {} 0 {} 1 {} {}Z", n(x2), n(y2), n(ri), n(ri), large, n(x3), n(y3)).unwrap();
    } else {
        write!(d, "L{} {}Z", n(cx), n(cy)).unwrap();
    }
    d
}

fn title(t: &Option<String>) -> String {
    t.as_ref().map(|t| format!("<title>{}</title>", escape(t))).unwrap_or_default()
}

impl RenderDocument {
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif">"##,
            n(self.width), n(self.height), n(self.width), n(self.height)
        )
        .unwrap();
        writeln!(s, "<desc>{}</desc>", escape(&self.title)).unwrap();
        writeln!(s, r##"<rect x="0" y="0" width="{}" height="{}" fill="#FFFFFF"/>"##, n(self.width), n(self.height)).unwrap();
        for node in &self.nodes {
            match node {
                Node::GroupStart { class, attrs } => {
                    write!(s, r##"<g class="{}""##, escape(class)).unwrap();
                    for (k, v) in attrs {
                        write!(s, r##" {}="{}""##, k, escape(v)).unwrap();
                    }
                    s.push_str(">\n");
                }
                Node::GroupEnd => s.push_str("</g>\n"),
                Node::Wedge { class, cx, cy, r_inner, r_outer, start, end, fill, tooltip } => {
                    let d = wedge_path(*cx, *cy, *r_inner, *r_outer, *start, *end);
                    let t = title(tooltip);
                    if t.is_empty() {
                        writeln!(s, r##"<path class="{class}" d="{d}" fill="{fill}" fill-rule="evenodd" stroke="#FFFFFF" stroke-width="0.5"/>"##).unwrap();
                    } else {
                        writeln!(s, r##"<path class="{class}" d="{d}" fill="{fill}" fill-rule="evenodd" stroke="#FFFFFF" stroke-width="0.5">{t}</path>"##).unwrap();
                    }
                }
                Node::Rect { x, y, w, h, fill, class, tooltip } => {
                    let attrs = format!(
                        r##"class="{class}" x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#FFFFFF" stroke-width="0.5""##,
                        n(*x), n(*y), n(*w), n(*h)
                    );
                    let t = title(tooltip);
                    if t.is_empty() {
                        writeln!(s, "<rect {attrs}/>").unwrap();
                    } else {
                        writeln!(s, "<rect {attrs}>{t}</rect>").unwrap();
                    }
                }
                Node::Circle { cx, cy, r, fill, class, tooltip } => {
                    let attrs = format!(r##"class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}""##, n(*cx), n(*cy), n(*r));
                    let t = title(tooltip);
                    if t.is_empty() {
                        writeln!(s, "<circle {attrs}/>").unwrap();
                    } else {
                        writeln!(s, "<circle {attrs}>{t}</circle>").unwrap();
                    }
                }
                Node::Line { x1, y1, x2, y2 } => {
                    writeln!(
                        s,
                        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#BBBBBB" stroke-width="1"/>"##,
                        n(*x1), n(*y1), n(*x2), n(*y2)
                    )
                    .unwrap();
                }
                Node::Text { x, y, text, anchor, size } => {
                    writeln!(
                        s,
                        r##"<text x="{}" y="{}" text-anchor="{anchor}" font-size="{}" dominant-baseline="middle">{}</text>"##,
                        n(*x), n(*y), n(*size), escape(text)
                    )
                    .unwrap();
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }

    /// Standalone page embedding the SVG; tooltips are native `<title>`s.
    pub fn to_html(&self) -> String {
        format!(
            "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>{}</title>\n</head>\n<body>\n{}</body>\n</html>\n",
            escape(&self.title),
            self.to_svg()
        )
    }
}
