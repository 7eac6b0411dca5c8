//! Tiny SVG writer: enough primitives for the spectrum ladder, the measure
//! stem plot, the escape-region curve and the gap bars. No external deps, no
//! styling system; callers place shapes in data coordinates and a linear
//! transform maps them to the page.

use std::fmt::Write;

pub struct Canvas {
    width: f64,
    height: f64,
    margin: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    body: String,
}

impl Canvas {
    pub fn new(width: f64, height: f64, x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        assert!(x_range.1 > x_range.0 && y_range.1 > y_range.0);
        Canvas { width, height, margin: 40.0, x_range, y_range, body: String::new() }
    }

    fn tx(&self, x: f64) -> f64 {
        let (a, b) = self.x_range;
        self.margin + (x - a) / (b - a) * (self.width - 2.0 * self.margin)
    }

    fn ty(&self, y: f64) -> f64 {
        let (a, b) = self.y_range;
        // SVG y grows downward.
        self.height - self.margin - (y - a) / (b - a) * (self.height - 2.0 * self.margin)
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        writeln!(
            self.body,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="{}"/>"#,
            self.tx(x1),
            self.ty(y1),
            self.tx(x2),
            self.ty(y2),
            stroke,
            width
        )
        .unwrap();
    }

    pub fn rect(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, fill: &str) {
        let (px1, px2) = (self.tx(x1.min(x2)), self.tx(x1.max(x2)));
        let (py1, py2) = (self.ty(y1.max(y2)), self.ty(y1.min(y2)));
        writeln!(
            self.body,
            r#"  <rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            px1,
            py1,
            (px2 - px1).max(0.5),
            (py2 - py1).max(0.5),
            fill
        )
        .unwrap();
    }

    pub fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        writeln!(
            self.body,
            r#"  <circle cx="{:.2}" cy="{:.2}" r="{}" fill="{}"/>"#,
            self.tx(x),
            self.ty(y),
            r,
            fill
        )
        .unwrap();
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", self.tx(x), self.ty(y)))
            .collect();
        writeln!(
            self.body,
            r#"  <polyline points="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            coords.join(" "),
            stroke,
            width
        )
        .unwrap();
    }

    pub fn text(&mut self, x: f64, y: f64, s: &str, size: f64) {
        writeln!(
            self.body,
            r#"  <text x="{:.2}" y="{:.2}" font-size="{}" font-family="sans-serif">{}</text>"#,
            self.tx(x),
            self.ty(y),
            size,
            xml_escape(s)
        )
        .unwrap();
    }

    /// Horizontal and vertical axes along the data ranges, with end labels.
    pub fn axes(&mut self) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        self.line(x0, y0, x1, y0, "black", 1.0);
        self.line(x0, y0, x0, y1, "black", 1.0);
        self.text(x0, y0 - 0.06 * (y1 - y0), &trim_num(x0), 10.0);
        self.text(x1, y0 - 0.06 * (y1 - y0), &trim_num(x1), 10.0);
        self.text(x0 - 0.04 * (x1 - x0), y1, &trim_num(y1), 10.0);
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
             viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

fn trim_num(v: f64) -> String {
    if v == v.trunc() {
        format!("{}", v as i64)
    } else {
        format!("{:.3}", v)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
