use std::fmt::Write;

use serde::Serialize;

use super::{AttachedSingularity, CurveKind, CurvePolyline, Singularity, SingularityType};
use crate::point::Rectangle;

const CANVAS_HEIGHT: f64 = 1000.0;

/// What to draw besides the curves.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Grey band over 0 ≤ σ ≤ 1.
    pub shade_strip: bool,
    pub axes: bool,
    /// Dots at zeros, crosses at saddles, squares at poles.
    pub markers: bool,
    pub labels: bool,
    /// Draw every vertex as a dot instead of polylines.
    pub point_cloud: bool,
    pub thin_width: f64,
    /// Heights of Gram points to circle on the critical line.
    pub gram_points: Vec<f64>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            shade_strip: true,
            axes: true,
            markers: true,
            labels: false,
            point_cloud: false,
            thin_width: 1.0,
            gram_points: Vec::new(),
        }
    }
}

/// Fixed 6-significant-digit formatting without trailing zeros.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (5 - mag).clamp(0, 12) as usize;
    let mut s = format!("{x:.prec$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

struct Map {
    rect: Rectangle,
    k: f64,
}

impl Map {
    fn x(&self, sigma: f64) -> f64 {
        (sigma - self.rect.sigma_min) * self.k
    }
    fn y(&self, t: f64) -> f64 {
        (self.rect.t_max - t) * self.k
    }
    fn xy(&self, sigma: f64, t: f64) -> String {
        format!("{},{}", num(self.x(sigma)), num(self.y(t)))
    }
}

/// SVG document of an X-ray. Thick curves are drawn twice as wide as thin
/// ones; output depends only on the inputs.
pub fn render_svg(
    curves: &[CurvePolyline],
    singularities: &[Singularity],
    rect: &Rectangle,
    style: &RenderStyle,
) -> String {
    let map = Map { rect: *rect, k: CANVAS_HEIGHT / rect.height() };
    let width = map.x(rect.sigma_max);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(CANVAS_HEIGHT)
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, num(width), num(CANVAS_HEIGHT));
    if style.shade_strip && rect.sigma_max > 0.0 && rect.sigma_min < 1.0 {
        let (a, b) = (rect.sigma_min.max(0.0), rect.sigma_max.min(1.0));
        let _ = writeln!(
            s,
            r##"<rect x="{}" y="0" width="{}" height="{}" fill="#d9d9d9"/>"##,
            num(map.x(a)),
            num(map.x(b) - map.x(a)),
            num(CANVAS_HEIGHT)
        );
    }
    if style.axes {
        let _ = writeln!(s, r##"<g stroke="#808080" stroke-width="0.5" fill="none">"##);
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{}" height="{}"/>"#, num(width), num(CANVAS_HEIGHT));
        if rect.t_min < 0.0 && rect.t_max > 0.0 {
            let _ = writeln!(s, r#"<line x1="0" y1="{y}" x2="{}" y2="{y}"/>"#, num(width), y = num(map.y(0.0)));
        }
        if rect.sigma_min < 0.0 && rect.sigma_max > 0.0 {
            let _ = writeln!(s, r#"<line x1="{x}" y1="0" x2="{x}" y2="{}"/>"#, num(CANVAS_HEIGHT), x = num(map.x(0.0)));
        }
        let _ = writeln!(s, "</g>");
    }
    let thin = style.thin_width;
    for kind in [CurveKind::Thin, CurveKind::Thick] {
        let w = if kind == CurveKind::Thick { 2.0 * thin } else { thin };
        let _ = writeln!(s, r#"<g class="{}" stroke="black" stroke-width="{}" fill="none">"#, kind.name(), num(w));
        for c in curves.iter().filter(|c| c.kind == kind) {
            if style.point_cloud {
                for p in &c.points {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{}" cy="{}" r="{}" fill="black" stroke="none"/>"#,
                        num(map.x(p.re)),
                        num(map.y(p.im)),
                        num(w)
                    );
                }
                continue;
            }
            if c.points.len() < 2 {
                continue;
            }
            let pts: Vec<String> = c.points.iter().map(|p| map.xy(p.re, p.im)).collect();
            let tag = if c.closed { "polygon" } else { "polyline" };
            let _ = writeln!(s, r#"<{tag} points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(s, "</g>");
    }
    if style.markers {
        let r = 3.0 * thin;
        for sg in singularities {
            let (x, y) = (map.x(sg.point.re), map.y(sg.point.im));
            let _ = match sg.kind {
                SingularityType::Zero => {
                    writeln!(s, r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#, num(x), num(y), num(r))
                }
                SingularityType::Pole => writeln!(
                    s,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
                    num(x - r),
                    num(y - r),
                    num(2.0 * r),
                    num(2.0 * r)
                ),
                SingularityType::Saddle => writeln!(
                    s,
                    r#"<path d="M{},{}L{},{}M{},{}L{},{}" stroke="black" stroke-width="{}"/>"#,
                    num(x - r),
                    num(y - r),
                    num(x + r),
                    num(y + r),
                    num(x - r),
                    num(y + r),
                    num(x + r),
                    num(y - r),
                    num(thin)
                ),
            };
        }
        for &g in &style.gram_points {
            if g >= rect.t_min && g <= rect.t_max && rect.sigma_min <= 0.5 && rect.sigma_max >= 0.5 {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black"/>"#,
                    num(map.x(0.5)),
                    num(map.y(g)),
                    num(r)
                );
            }
        }
    }
    if style.labels {
        for c in curves {
            if let (Some(n), Some(p)) = (c.line_number, c.points.iter().max_by(|a, b| a.im.total_cmp(&b.im))) {
                let _ =
                    writeln!(s, r#"<text x="{}" y="{}" font-size="12">{n}</text>"#, num(map.x(p.re)), num(map.y(p.im)));
            }
        }
    }
    let _ = writeln!(s, "</svg>");
    s
}

/// One "σ t kind" row per curve vertex.
pub fn point_dump(curves: &[CurvePolyline]) -> String {
    let mut s = String::new();
    for c in curves {
        for p in &c.points {
            let _ = writeln!(s, "{} {} {}", p.re, p.im, c.kind.name());
        }
    }
    s
}

#[derive(Serialize)]
struct InventoryRecord<'a> {
    kind: CurveKind,
    line_number: Option<i64>,
    line_numbers: &'a [i64],
    closed: bool,
    points: usize,
    start: [f64; 2],
    end: [f64; 2],
    singularities: &'a [AttachedSingularity],
}

/// One JSON record per curve: kind, line_number, line_numbers, closed,
/// points (vertex count), start, end, singularities.
pub fn inventory_jsonl(curves: &[CurvePolyline]) -> String {
    let mut s = String::new();
    for c in curves {
        let (Some(a), Some(b)) = (c.points.first(), c.points.last()) else { continue };
        let rec = InventoryRecord {
            kind: c.kind,
            line_number: c.line_number,
            line_numbers: &c.line_numbers,
            closed: c.closed,
            points: c.points.len(),
            start: [a.re, a.im],
            end: [b.re, b.im],
            singularities: &c.attached_singularities,
        };
        s.push_str(&serde_json::to_string(&rec).expect("inventory records serialize"));
        s.push('\n');
    }
    s
}
