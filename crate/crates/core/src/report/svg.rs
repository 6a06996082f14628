//! Minimal inline-SVG builder. Tooltips are declarative `<title>` children,
//! so the rendered report needs no scripts.

use std::fmt::Write;

pub struct Svg {
    pub width: f64,
    pub height: f64,
    body: String,
}

pub fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn fmt_coord(v: f64) -> String {
    format!("{:.2}", v)
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Svg {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{width}"/>"#,
            fmt_coord(x1),
            fmt_coord(y1),
            fmt_coord(x2),
            fmt_coord(y2),
        )
        .unwrap();
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str, title: Option<&str>) {
        if let Some(title) = title {
            writeln!(
                self.body,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"><title>{}</title></circle>"#,
                fmt_coord(cx),
                fmt_coord(cy),
                fmt_coord(r),
                escape(title),
            )
            .unwrap();
        } else {
            writeln!(
                self.body,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
                fmt_coord(cx),
                fmt_coord(cy),
                fmt_coord(r),
            )
            .unwrap();
        }
    }

    pub fn ring(
        &mut self,
        cx: f64,
        cy: f64,
        r: f64,
        stroke: &str,
        width: f64,
        title: Option<&str>,
    ) {
        let t = title
            .map(|t| format!("<title>{}</title>", escape(t)))
            .unwrap_or_default();
        writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="{width}">{t}</circle>"#,
            fmt_coord(cx),
            fmt_coord(cy),
            fmt_coord(r),
        )
        .unwrap();
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, title: Option<&str>) {
        let t = title
            .map(|t| format!("<title>{}</title>", escape(t)))
            .unwrap_or_default();
        writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}">{t}</rect>"#,
            fmt_coord(x),
            fmt_coord(y),
            fmt_coord(w.max(0.0)),
            fmt_coord(h.max(0.0)),
        )
        .unwrap();
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        let pts: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y)))
            .collect();
        writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            pts.join(" "),
        )
        .unwrap();
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], fill: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_coord(*x), fmt_coord(*y)))
            .collect();
        writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="none"/>"#,
            pts.join(" "),
        )
        .unwrap();
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" font-size=\"{size}\" text-anchor=\"{anchor}\" fill=\"#333\">{}</text>",
            fmt_coord(x),
            fmt_coord(y),
            escape(content),
        )
        .unwrap();
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\" role=\"img\">\n{}</svg>",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

/// Linear data-to-pixel mapping for one axis.
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub domain: (f64, f64),
    pub range: (f64, f64),
}

impl Scale {
    pub fn new(domain: (f64, f64), range: (f64, f64)) -> Self {
        let domain = if domain.0 == domain.1 {
            (domain.0 - 1.0, domain.1 + 1.0)
        } else {
            domain
        };
        Scale { domain, range }
    }

    pub fn map(&self, v: f64) -> f64 {
        let t = (v - self.domain.0) / (self.domain.1 - self.domain.0);
        self.range.0 + t * (self.range.1 - self.range.0)
    }

    /// A handful of round tick positions across the domain.
    pub fn ticks(&self, count: usize) -> Vec<f64> {
        let (lo, hi) = self.domain;
        let span = hi - lo;
        if span <= 0.0 || count == 0 {
            return vec![lo];
        }
        let raw_step = span / count as f64;
        let magnitude = 10f64.powf(raw_step.log10().floor());
        let step = [1.0, 2.0, 2.5, 5.0, 10.0]
            .iter()
            .map(|m| m * magnitude)
            .find(|&s| s >= raw_step)
            .unwrap_or(magnitude * 10.0);
        let start = (lo / step).ceil() * step;
        let mut ticks = Vec::new();
        let mut v = start;
        while v <= hi + step * 1e-9 {
            ticks.push(v);
            v += step;
        }
        ticks
    }
}
