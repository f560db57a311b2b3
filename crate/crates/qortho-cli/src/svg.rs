//! Hand-rolled SVG scatter plots.
//!
//! A [`Figure`] is a grid of [`Panel`]s. Each panel draws its markers as
//! `<circle class="zero">` elements (exactly one per point, nothing else
//! uses `<circle>`), an optional polyline, a frame, the coordinate axes when
//! they fall inside the data range, and the range limits as labels.

use std::fmt::Write;

/// Width and height of one panel, in pixels.
const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 240.0;
/// Inner margin of a panel.
const MARGIN: f64 = 36.0;
/// Panels per figure row.
const PANELS_PER_ROW: usize = 3;

/// One plot panel.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Points drawn as markers.
    pub markers: Vec<(f64, f64)>,
    /// Points joined by a polyline.
    pub line: Vec<(f64, f64)>,
}

/// A titled grid of panels.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Figure {
    pub title: String,
    pub panels: Vec<Panel>,
}

impl Figure {
    /// Total number of markers over all panels.
    pub fn marker_count(&self) -> usize {
        self.panels.iter().map(|p| p.markers.len()).sum()
    }

    /// Renders the figure as a standalone SVG document.
    pub fn render(&self) -> String {
        let cols = self.panels.len().clamp(1, PANELS_PER_ROW);
        let rows = self.panels.len().div_ceil(PANELS_PER_ROW).max(1);
        let width = cols as f64 * PANEL_W;
        let height = rows as f64 * PANEL_H + 30.0;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            width / 2.0,
            escape(&self.title)
        );
        for (i, panel) in self.panels.iter().enumerate() {
            let ox = (i % PANELS_PER_ROW) as f64 * PANEL_W;
            let oy = 30.0 + (i / PANELS_PER_ROW) as f64 * PANEL_H;
            render_panel(&mut s, panel, ox, oy);
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Data range padded so that single points and flat data remain visible.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 * lo.abs().max(1.0) };
    (lo - pad, hi + pad)
}

fn render_panel(s: &mut String, panel: &Panel, ox: f64, oy: f64) {
    let all = || panel.markers.iter().chain(&panel.line);
    let (x0, x1) = range(all().map(|p| p.0));
    let (y0, y1) = range(all().map(|p| p.1));
    let (left, right) = (ox + MARGIN, ox + PANEL_W - MARGIN / 2.0);
    let (top, bottom) = (oy + MARGIN / 2.0, oy + PANEL_H - MARGIN);
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * (right - left);
    let sy = |y: f64| bottom - (y - y0) / (y1 - y0) * (bottom - top);
    let _ = writeln!(s, r#"<g class="panel">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(s, r##"<line x1="{0:.2}" y1="{top:.2}" x2="{0:.2}" y2="{bottom:.2}" stroke="#bbb"/>"##, sx(0.0));
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(s, r##"<line x1="{left:.2}" y1="{0:.2}" x2="{right:.2}" y2="{0:.2}" stroke="#bbb"/>"##, sy(0.0));
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, (left + right) / 2.0, oy + 12.0, escape(&panel.title));
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, (left + right) / 2.0, bottom + 28.0, escape(&panel.x_label));
    let _ = writeln!(
        s,
        r#"<text x="{0:.2}" y="{1:.2}" text-anchor="middle" transform="rotate(-90 {0:.2} {1:.2})">{2}</text>"#,
        ox + 10.0,
        (top + bottom) / 2.0,
        escape(&panel.y_label)
    );
    let _ = writeln!(s, r#"<text x="{left:.2}" y="{:.2}">{}</text>"#, bottom + 14.0, tick(x0));
    let _ = writeln!(s, r#"<text x="{right:.2}" y="{:.2}" text-anchor="end">{}</text>"#, bottom + 14.0, tick(x1));
    let _ = writeln!(s, r#"<text x="{:.2}" y="{bottom:.2}" text-anchor="end">{}</text>"#, left - 2.0, tick(y0));
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, left - 2.0, top + 8.0, tick(y1));
    if !panel.line.is_empty() {
        let pts: Vec<String> = panel
            .line
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="steelblue" points="{}"/>"#, pts.join(" "));
    }
    for &(x, y) in &panel.markers {
        let _ = writeln!(s, r#"<circle class="zero" cx="{:.2}" cy="{:.2}" r="3" fill="crimson"/>"#, sx(x), sy(y));
    }
    s.push_str("</g>\n");
}

fn tick(v: f64) -> String {
    crate::output::format_sig(v, 3)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
