//! Minimal deterministic SVG charts: scatter points, polylines and shaded
//! bands on linear axes.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const TICKS: usize = 5;

#[derive(Debug, Clone)]
enum Layer {
    Points {
        xy: Vec<(f64, f64)>,
        color: &'static str,
    },
    Line {
        xy: Vec<(f64, f64)>,
        color: &'static str,
    },
    Band {
        x: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        color: &'static str,
    },
}

#[derive(Debug, Clone)]
pub struct Chart {
    title: String,
    x_label: String,
    y_label: String,
    layers: Vec<Layer>,
}

impl Chart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Chart {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            layers: Vec::new(),
        }
    }

    pub fn points(mut self, xy: Vec<(f64, f64)>, color: &'static str) -> Self {
        self.layers.push(Layer::Points {
            xy: finite(xy),
            color,
        });
        self
    }

    pub fn line(mut self, xy: Vec<(f64, f64)>, color: &'static str) -> Self {
        self.layers.push(Layer::Line {
            xy: finite(xy),
            color,
        });
        self
    }

    /// Shaded region between `lower` and `upper` over `x`.
    pub fn band(
        mut self,
        x: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        color: &'static str,
    ) -> Self {
        assert!(x.len() == lower.len() && x.len() == upper.len());
        self.layers.push(Layer::Band {
            x,
            lower,
            upper,
            color,
        });
        self
    }

    fn extent(&self) -> ((f64, f64), (f64, f64)) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for layer in &self.layers {
            match layer {
                Layer::Points { xy, .. } | Layer::Line { xy, .. } => {
                    xs.extend(xy.iter().map(|p| p.0));
                    ys.extend(xy.iter().map(|p| p.1));
                }
                Layer::Band {
                    x, lower, upper, ..
                } => {
                    xs.extend(x);
                    ys.extend(lower.iter().chain(upper));
                }
            }
        }
        (range(&xs), range(&ys))
    }

    pub fn render(&self) -> String {
        let ((x0, x1), (y0, y1)) = self.extent();
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            out,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            out,
            r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#
        );
        for i in 0..=TICKS {
            let t = i as f64 / TICKS as f64;
            let (x, y) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
                sx(x),
                bottom + 18.0,
                tick(x)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                left - 6.0,
                sy(y) + 4.0,
                tick(y)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 16.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );
        for layer in &self.layers {
            match layer {
                Layer::Points { xy, color } => {
                    for &(x, y) in xy {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                            sx(x),
                            sy(y)
                        );
                    }
                }
                Layer::Line { xy, color } if xy.len() >= 2 => {
                    let pts: Vec<String> = xy
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                        pts.join(" ")
                    );
                }
                Layer::Line { .. } => {}
                Layer::Band {
                    x,
                    lower,
                    upper,
                    color,
                } => {
                    let forward = x.iter().zip(upper).map(|(&x, &y)| (x, y));
                    let back = x.iter().zip(lower).rev().map(|(&x, &y)| (x, y));
                    let pts: Vec<String> = forward
                        .chain(back)
                        .filter(|(x, y)| x.is_finite() && y.is_finite())
                        .map(|(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<polygon points="{}" fill="{color}" fill-opacity="0.3" stroke="none"/>"#,
                        pts.join(" ")
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn finite(xy: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    xy.into_iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect()
}

/// Data range padded to a non-empty interval.
fn range(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values.iter().filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        return (0.0, 1.0);
    }
    if lo == hi {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
