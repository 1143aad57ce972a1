//! Minimal self-contained SVG plots in data coordinates.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

pub struct Plot {
    x: (f64, f64),
    y: (f64, f64),
    body: String,
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|k| k * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

impl Plot {
    /// Plot window fitted to `points` with a 5% pad.
    pub fn fitted<'a>(points: impl IntoIterator<Item = &'a [f64; 2]>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        if !(x0 < x1) {
            (x0, x1) = (x0 - 1.0, x0 + 1.0);
        }
        if !(y0 < y1) {
            (y0, y1) = (y0 - 1.0, y0 + 1.0);
        }
        let (px, py) = (0.05 * (x1 - x0), 0.05 * (y1 - y0));
        Self {
            x: (x0 - px, x1 + px),
            y: (y0 - py, y1 + py),
            body: String::new(),
        }
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }

    fn path_data(&self, pts: &[[f64; 2]], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.2} {:.2} ", self.sx(p[0]), self.sy(p[1])).unwrap();
        }
        if closed {
            d.push('Z');
        }
        d.trim_end().to_string()
    }

    pub fn polyline(&mut self, pts: &[[f64; 2]], color: &str, width: f64, closed: bool) {
        if pts.is_empty() {
            return;
        }
        writeln!(
            self.body,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
            self.path_data(pts, closed)
        )
        .unwrap();
    }

    pub fn polygon(&mut self, pts: &[[f64; 2]], fill: &str, stroke: &str) {
        writeln!(
            self.body,
            r#"<path d="{}" fill="{fill}" fill-opacity="0.35" stroke="{stroke}" stroke-width="1.5"/>"#,
            self.path_data(pts, true)
        )
        .unwrap();
    }

    pub fn dots(&mut self, pts: &[[f64; 2]], color: &str, radius: f64) {
        writeln!(self.body, r#"<g fill="{color}">"#).unwrap();
        for p in pts {
            writeln!(
                self.body,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{radius}"/>"#,
                self.sx(p[0]),
                self.sy(p[1])
            )
            .unwrap();
        }
        self.body.push_str("</g>\n");
    }

    pub fn label(&mut self, at: [f64; 2], text: &str, color: &str) {
        writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{color}">{}</text>"#,
            self.sx(at[0]) + 4.0,
            self.sy(at[1]) - 4.0,
            escape(text)
        )
        .unwrap();
    }

    fn axes(&self, xlabel: &str, ylabel: &str) -> String {
        let mut s = String::new();
        let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        writeln!(
            s,
            r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            r - l,
            b - t
        )
        .unwrap();
        let xs = nice_step(self.x.1 - self.x.0);
        let mut v = (self.x.0 / xs).ceil() * xs;
        while v <= self.x.1 {
            let x = self.sx(v);
            writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{b}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                b + 5.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{x:.2}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
                b + 18.0,
                fmt_tick(v)
            )
            .unwrap();
            v += xs;
        }
        let ys = nice_step(self.y.1 - self.y.0);
        let mut v = (self.y.0 / ys).ceil() * ys;
        while v <= self.y.1 {
            let y = self.sy(v);
            writeln!(
                s,
                r#"<line x1="{}" y1="{y:.2}" x2="{l}" y2="{y:.2}" stroke="black"/>"#,
                l - 5.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
                l - 8.0,
                y + 4.0,
                fmt_tick(v)
            )
            .unwrap();
            v += ys;
        }
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 12.0,
            escape(xlabel)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(ylabel)
        )
        .unwrap();
        s
    }

    pub fn finish(self, title: &str, xlabel: &str, ylabel: &str) -> String {
        let mut s = format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        s.push('\n');
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="28" font-size="15" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            escape(title)
        )
        .unwrap();
        s.push_str(&self.axes(xlabel, ylabel));
        writeln!(
            s,
            r#"<clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}"/></clipPath>"#,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        )
        .unwrap();
        s.push_str("<g clip-path=\"url(#plot)\">\n");
        s.push_str(&self.body);
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
