//! SVG scatter of temperature against next-hour demand, with the fitted
//! trend line overlaid.
//!
//! The root element carries `data-*` attributes describing the data-to-pixel
//! mapping, so the geometry can be inverted exactly: tests recover the trend
//! slope and intercept from the rendered line itself.

use std::fmt::Write as _;

use anyhow::{ensure, Result};
use loadcast::pipeline::HourlyRecord;
use loadcast::regression::{self, CoefficientVector};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

/// Scatter points: temperature at hour `t` against load at `t+1`.
pub fn temperature_demand_points(series: &[HourlyRecord]) -> Vec<(f64, f64)> {
    series
        .windows(2)
        .map(|w| (w[0].temp_c(), w[1].load_mw()))
        .collect()
}

/// Renders the scatter-plus-trend SVG for a series.
pub fn render(series: &[HourlyRecord]) -> Result<String> {
    let points = temperature_demand_points(series);
    ensure!(
        points.len() >= 2,
        "need at least 3 records (2 scatter points), found {} records",
        series.len()
    );
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let trend = regression::fit_simple(&xs, &ys)?;
    Ok(render_svg(&points, &trend))
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    let span = max - min;
    let pad = if span == 0.0 { 1.0 } else { 0.05 * span };
    (min - pad, max + pad)
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT
            + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN_TOP
            + (self.y_max - y) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn render_svg(points: &[(f64, f64)], trend: &CoefficientVector) -> String {
    let (x_min, x_max) = padded_range(points.iter().map(|p| p.0));
    let (y_min, y_max) = padded_range(points.iter().map(|p| p.1));
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
    };
    let plot_right = WIDTH - MARGIN_RIGHT;
    let plot_bottom = HEIGHT - MARGIN_BOTTOM;

    let mut svg = String::with_capacity(4096 + 96 * points.len());
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         data-x-min=\"{x_min}\" data-x-max=\"{x_max}\" \
         data-y-min=\"{y_min}\" data-y-max=\"{y_max}\" \
         data-plot-left=\"{MARGIN_LEFT}\" data-plot-right=\"{plot_right}\" \
         data-plot-top=\"{MARGIN_TOP}\" data-plot-bottom=\"{plot_bottom}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{:.6}\" height=\"{:.6}\" \
         fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>",
        plot_right - MARGIN_LEFT,
        plot_bottom - MARGIN_TOP,
    );

    // Ticks and numeric labels.
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let x = x_min + f * (x_max - x_min);
        let px = frame.px(x);
        let _ = writeln!(
            svg,
            "  <line x1=\"{px:.6}\" y1=\"{plot_bottom:.6}\" x2=\"{px:.6}\" y2=\"{:.6}\" \
             stroke=\"#888\" stroke-width=\"1\"/>",
            plot_bottom + 6.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{px:.6}\" y=\"{:.6}\" font-size=\"11\" text-anchor=\"middle\" \
             font-family=\"sans-serif\">{x:.1}</text>",
            plot_bottom + 20.0
        );
        let y = y_min + f * (y_max - y_min);
        let py = frame.py(y);
        let _ = writeln!(
            svg,
            "  <line x1=\"{:.6}\" y1=\"{py:.6}\" x2=\"{MARGIN_LEFT:.6}\" y2=\"{py:.6}\" \
             stroke=\"#888\" stroke-width=\"1\"/>",
            MARGIN_LEFT - 6.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.6}\" y=\"{:.6}\" font-size=\"11\" text-anchor=\"end\" \
             font-family=\"sans-serif\">{y:.1}</text>",
            MARGIN_LEFT - 9.0,
            py + 4.0
        );
    }

    // Axis labels.
    let _ = writeln!(
        svg,
        "  <text x=\"{:.6}\" y=\"{:.6}\" font-size=\"13\" text-anchor=\"middle\" \
         font-family=\"sans-serif\">Temperature (&#176;C)</text>",
        (MARGIN_LEFT + plot_right) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "  <text x=\"16\" y=\"{:.6}\" font-size=\"13\" text-anchor=\"middle\" \
         font-family=\"sans-serif\" transform=\"rotate(-90 16 {:.6})\">Demand (MW)</text>",
        (MARGIN_TOP + plot_bottom) / 2.0,
        (MARGIN_TOP + plot_bottom) / 2.0
    );

    for &(x, y) in points {
        let _ = writeln!(
            svg,
            "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"3\" fill=\"#47a3ff\" fill-opacity=\"0.8\"/>",
            frame.px(x),
            frame.py(y)
        );
    }

    // Trend line across the full x range; both endpoints lie on the fit.
    let slope = trend.coefficients[0];
    let (x1, x2) = (x_min, x_max);
    let (y1, y2) = (trend.intercept + slope * x1, trend.intercept + slope * x2);
    let _ = writeln!(
        svg,
        "  <line class=\"trend\" x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" \
         stroke=\"dimgray\" stroke-width=\"1.5\"/>",
        frame.px(x1),
        frame.py(y1),
        frame.px(x2),
        frame.py(y2)
    );

    svg.push_str("</svg>\n");
    svg
}
