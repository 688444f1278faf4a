//! Minimal SVG rendering of histograms and parameter scatter plots.
//!
//! Self-contained string assembly, no drawing dependency. The histogram can
//! overlay a fitted Beta density scaled to the count axis; the scatter plot
//! marks high-texture fits in red and draws the beta cutoff line.

use std::fmt::Write as _;

use crate::beta_stats::{beta_pdf, BetaParams, Histogram, ScatterRow, TextureClass};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 48.0;

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn plot() -> Self {
        Frame {
            x0: MARGIN,
            y0: MARGIN * 0.6,
            x1: WIDTH - MARGIN * 0.4,
            y1: HEIGHT - MARGIN,
        }
    }

    fn map_x(&self, t: f64) -> f64 {
        self.x0 + t * (self.x1 - self.x0)
    }

    fn map_y(&self, t: f64) -> f64 {
        self.y1 - t * (self.y1 - self.y0)
    }
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"15\" \
         text-anchor=\"middle\">{title}</text>\n",
        WIDTH / 2.0,
        MARGIN * 0.45,
    )
}

fn axes(svg: &mut String, f: &Frame) {
    let _ = writeln!(
        svg,
        "<path d=\"M {:.1} {:.1} L {:.1} {:.1} L {:.1} {:.1}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>",
        f.x0, f.y0, f.x0, f.y1, f.x1, f.y1
    );
}

fn x_tick(svg: &mut String, f: &Frame, t: f64, label: &str) {
    let x = f.map_x(t);
    let _ = writeln!(
        svg,
        "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n\
         <text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
         text-anchor=\"middle\">{label}</text>",
        f.y1,
        f.y1 + 4.0,
        f.y1 + 16.0
    );
}

fn y_tick(svg: &mut String, f: &Frame, t: f64, label: &str) {
    let y = f.map_y(t);
    let _ = writeln!(
        svg,
        "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"black\"/>\n\
         <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
         text-anchor=\"end\">{label}</text>",
        f.x0 - 4.0,
        f.x0,
        f.x0 - 7.0,
        y + 4.0
    );
}

/// Renders a histogram of excess indices, optionally overlaying the fitted
/// Beta density (shifted onto [1, 2] and scaled to expected counts).
pub fn render_histogram_svg(histogram: &Histogram, fit: Option<&BetaParams>) -> String {
    let f = Frame::plot();
    let mut svg = header("Excess index histogram");
    axes(&mut svg, &f);

    let bins = histogram.counts.len().max(1);
    let total: u64 = histogram.counts.iter().sum();
    let max_count = histogram.counts.iter().copied().max().unwrap_or(0).max(1);

    for (i, &count) in histogram.counts.iter().enumerate() {
        let x = f.map_x(i as f64 / bins as f64);
        let w = (f.x1 - f.x0) / bins as f64;
        let h_frac = count as f64 / max_count as f64;
        let y = f.map_y(h_frac);
        let _ = writeln!(
            svg,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{:.2}\" \
             fill=\"#4878a8\" stroke=\"white\" stroke-width=\"0.5\"/>",
            f.y1 - y
        );
    }

    if let (Some(params), true) = (fit, total > 0) {
        // Expected count in a bin of width 1/bins is total * pdf / bins.
        let scale = total as f64 / bins as f64 / max_count as f64;
        let mut path = String::new();
        let steps = 256;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let p = t.clamp(1e-9, 1.0 - 1e-9);
            let Ok(density) = beta_pdf(params, p) else {
                continue;
            };
            let y = f.map_y((density * scale).min(1.2));
            let x = f.map_x(t);
            let _ = write!(
                path,
                "{}{x:.2} {y:.2}",
                if path.is_empty() { "M " } else { " L " }
            );
        }
        let _ = writeln!(
            svg,
            "<path d=\"{path}\" fill=\"none\" stroke=\"#c03028\" stroke-width=\"1.8\"/>"
        );
    }

    x_tick(&mut svg, &f, 0.0, "1.0");
    x_tick(&mut svg, &f, 0.5, "1.5");
    x_tick(&mut svg, &f, 1.0, "2.0");
    y_tick(&mut svg, &f, 0.0, "0");
    y_tick(&mut svg, &f, 1.0, &max_count.to_string());

    svg.push_str("</svg>\n");
    svg
}

/// Renders the (alpha, beta) scatter of grouped fits. High-texture groups
/// are red, low-texture blue; the dashed line marks the beta cutoff.
pub fn render_scatter_svg(rows: &[ScatterRow], beta_threshold: f64) -> String {
    let f = Frame::plot();
    let mut svg = header("Fitted shape parameters");
    axes(&mut svg, &f);

    let max_alpha = rows
        .iter()
        .map(|r| r.alpha)
        .fold(1.0f64, f64::max)
        .max(beta_threshold)
        * 1.1;
    let max_beta = rows
        .iter()
        .map(|r| r.beta)
        .fold(1.0f64, f64::max)
        .max(beta_threshold)
        * 1.1;

    let y_cut = f.map_y(beta_threshold / max_beta);
    let _ = writeln!(
        svg,
        "<line x1=\"{:.1}\" y1=\"{y_cut:.1}\" x2=\"{:.1}\" y2=\"{y_cut:.1}\" \
         stroke=\"#888888\" stroke-dasharray=\"5 4\"/>",
        f.x0, f.x1
    );

    for row in rows {
        let cx = f.map_x(row.alpha / max_alpha);
        let cy = f.map_y(row.beta / max_beta);
        let color = match row.class {
            TextureClass::High => "#c03028",
            TextureClass::Low => "#4878a8",
        };
        let _ = writeln!(
            svg,
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"{color}\">\
             <title>{}: alpha={:.3} beta={:.3}</title></circle>",
            row.group, row.alpha, row.beta
        );
    }

    x_tick(&mut svg, &f, 0.0, "0");
    x_tick(&mut svg, &f, 1.0, &format!("{max_alpha:.1}"));
    y_tick(&mut svg, &f, 0.0, "0");
    y_tick(&mut svg, &f, 1.0, &format!("{max_beta:.1}"));
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">alpha</text>\n\
         <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
         transform=\"rotate(-90 {:.1} {:.1})\">beta</text>",
        (f.x0 + f.x1) / 2.0,
        f.y1 + 32.0,
        f.x0 - 32.0,
        (f.y0 + f.y1) / 2.0,
        f.x0 - 32.0,
        (f.y0 + f.y1) / 2.0,
    );

    svg.push_str("</svg>\n");
    svg
}
