use std::collections::BTreeSet;

use num_complex::Complex64;

use super::grid::SignFields;
use super::{CurveKind, CurvePolyline, Singularity};
use crate::gram::line_number;
use crate::special::{FunctionOracle, OracleId};

/// Points where the polyline crosses the horizontal or vertical line
/// `coord(z) = level`; returns the other coordinate at each crossing.
fn crossings(curve: &CurvePolyline, level: f64, coord: fn(Complex64) -> f64, other: fn(Complex64) -> f64) -> Vec<f64> {
    let pts: Vec<Complex64> = curve.points.iter().map(|p| p.to_complex()).collect();
    let n = pts.len();
    let segs = if curve.closed { n } else { n.saturating_sub(1) };
    let mut out = Vec::new();
    for k in 0..segs {
        let (a, b) = (pts[k], pts[(k + 1) % n]);
        let (ca, cb) = (coord(a) - level, coord(b) - level);
        // Half-open test so a vertex exactly on the line is counted once.
        if (ca < 0.0 && cb >= 0.0) || (ca >= 0.0 && cb < 0.0) {
            let u = ca / (ca - cb);
            out.push(other(a) + (other(b) - other(a)) * u);
        }
    }
    out
}

/// Heights t at which the curve crosses the vertical line Re s = σ.
pub fn sigma_crossings(curve: &CurvePolyline, sigma: f64) -> Vec<f64> {
    crossings(curve, sigma, |z| z.re, |z| z.im)
}

/// Abscissae σ at which the curve crosses the real axis.
pub fn real_axis_crossings(curve: &CurvePolyline) -> Vec<f64> {
    crossings(curve, 0.0, |z| z.im, |z| z.re)
}

/// Numbers the X-ray lines of ζ. A curve crossing σ = −1 at height t > 5
/// carries the nearest integer to 2t/π log(t/2π) − 2t/π + 1/2. Thin lines
/// through the trivial zero −2n (n ≥ 2) are line −2n; thick lines reaching
/// the real axis between −2n−2 and −2n are line −(2n+1). Thick lines must
/// get odd numbers and thin lines even ones; a curve violating this keeps no
/// number and a diagnostic is returned. Other oracles are left unnumbered.
pub fn classify_and_number(
    curves: &mut [CurvePolyline],
    oracle: &dyn FunctionOracle,
    _singularities: &[Singularity],
    fields: &SignFields,
) -> Vec<String> {
    let rect = fields.rect;
    if oracle.id() != OracleId::Zeta || !(rect.sigma_min < -1.0 && rect.sigma_max > -1.0) {
        return Vec::new();
    }
    let near_axis = fields.cell_diagonal();
    let mut diagnostics = Vec::new();
    for c in curves.iter_mut() {
        let mut numbers = BTreeSet::new();
        for t in sigma_crossings(c, -1.0) {
            if t > 5.0 {
                if let Ok(n) = line_number(t) {
                    numbers.insert(n);
                }
            }
        }
        let reaches_up = c.points.iter().any(|p| p.im > near_axis);
        if reaches_up {
            match c.kind {
                CurveKind::Thin => {
                    for x in real_axis_crossings(c) {
                        let n = (x / 2.0).round();
                        if n <= -2.0 && (x - 2.0 * n).abs() < 1e-3 {
                            numbers.insert(2 * n as i64);
                        }
                    }
                }
                CurveKind::Thick => {
                    // Lowest point of the curve, if it touches the axis.
                    let low = c.points.iter().filter(|p| p.im.abs() <= near_axis && p.re < -2.0);
                    for p in low {
                        let n = (-p.re / 2.0).floor() as i64;
                        if n >= 1 && -p.re > 2.0 * n as f64 + 1e-3 && -p.re < 2.0 * (n + 1) as f64 - 1e-3 {
                            numbers.insert(-(2 * n + 1));
                        }
                    }
                }
            }
        }
        if numbers.is_empty() {
            continue;
        }
        let want_odd = c.kind == CurveKind::Thick;
        if numbers.iter().any(|n| (n.rem_euclid(2) == 1) != want_odd) {
            let first = c.points.first().map(|p| p.to_complex()).unwrap_or_default();
            diagnostics.push(format!(
                "{} curve starting near {first} got numbers {numbers:?} of the wrong parity; numbering withheld",
                c.kind.name()
            ));
            continue;
        }
        c.line_numbers = numbers.into_iter().collect();
        c.line_number = c.line_numbers.first().copied();
    }
    diagnostics
}
