use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::continuation::{derivative, tangent, trace_curve, Control, TraceConfig, TracePoint};
use super::{CurveKind, CurvePolyline};
use crate::error::{Error, Result};
use crate::gram::{find_zeros, gram_abscissa, line_number};
use crate::point::{point, ComplexPoint};
use crate::special::{FunctionOracle, OracleId};

/// Abscissa beyond which a thick line is taken to have joined the parallels.
const RIGHT_EXIT: f64 = 8.0;
/// Numbering abscissa.
const LEFT_EXIT: f64 = -1.0;
const MAX_PATH: f64 = 400.0;
const PARALLEL_START: f64 = 10.0;

/// The sheet holding a Gram point: the thick line through 1/2 + i gₙ, the
/// zero it carries and the numbers of its two lines. When the Gram point sits
/// on a zero-free parallel, the sheet is that parallel plus the parallel
/// right above it, which carries the zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sheet {
    pub gram_index: i64,
    pub gram_point: f64,
    /// The traced thick curve(s): the one through the Gram point first.
    pub curves: Vec<CurvePolyline>,
    pub zero: Option<ComplexPoint>,
    /// Index of the zero in the ordering by height (first zero = 1).
    pub zero_ordinal: Option<i64>,
    pub line_numbers: Option<(i64, i64)>,
    pub parallel: bool,
    pub note: Option<String>,
}

/// One parallel line traced leftward from σ = 10 to σ = −1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParallelTrace {
    pub k: i64,
    /// Height at σ = 10.
    pub t_right: f64,
    /// Height where the line crosses the critical line.
    pub t_critical: Option<f64>,
    /// Height at σ = −1.
    pub t_at_minus_one: Option<f64>,
    pub line_number: Option<i64>,
    pub zero: Option<ComplexPoint>,
    pub curve: CurvePolyline,
}

enum End {
    Left(f64),
    Right(f64),
    Limit,
}

struct Walk {
    points: Vec<TracePoint>,
    zero: Option<Complex64>,
    end: End,
}

/// 2-d Newton for a simple zero of f.
fn polish_zero(oracle: &dyn FunctionOracle, s0: Complex64) -> Option<Complex64> {
    let mut s = s0;
    for _ in 0..50 {
        let f = oracle.eval(s).ok()?.value;
        let fp = derivative(oracle, s, 1e-6).ok()?;
        let step = f / fp;
        s -= step;
        if (s - s0).norm() > 0.5 {
            return None;
        }
        if step.norm() < 1e-13 * s.norm() {
            return Some(s);
        }
    }
    Some(s)
}

/// Follows the thick curve from `start`, watching for a sign change of Re f
/// (a zero) and stopping at σ ≤ −1, σ ≥ `right_exit` or after MAX_PATH.
fn walk(oracle: &dyn FunctionOracle, start: Complex64, heading: Complex64, right_exit: f64) -> Result<Walk> {
    let mut prev: Option<TracePoint> = None;
    let mut bracket: Option<(TracePoint, TracePoint)> = None;
    let mut length = 0.0;
    let mut end = End::Limit;
    let cfg = TraceConfig::default();
    let points = trace_curve(oracle, CurveKind::Thick, start, heading, &cfg, |p| {
        if let Some(q) = prev {
            length += (p.s - q.s).norm();
            if bracket.is_none() && q.value.re.signum() != p.value.re.signum() {
                bracket = Some((q, *p));
            }
            if p.s.re <= LEFT_EXIT {
                let u = (q.s.re - LEFT_EXIT) / (q.s.re - p.s.re);
                end = End::Left(q.s.im + u * (p.s.im - q.s.im));
                return Control::Stop;
            }
        }
        prev = Some(*p);
        if p.s.re >= right_exit {
            end = End::Right(p.s.im);
            return Control::Stop;
        }
        if length > MAX_PATH {
            return Control::Stop;
        }
        Control::Continue
    })?;
    let zero = bracket.and_then(|(a, b)| {
        let u = a.value.re / (a.value.re - b.value.re);
        polish_zero(oracle, a.s + (b.s - a.s) * u)
    });
    Ok(Walk { points, zero, end })
}

fn polyline(points: &[TracePoint]) -> CurvePolyline {
    CurvePolyline::new(CurveKind::Thick, points.iter().map(|p| point(p.s)).collect(), false)
}

/// Ordinal of the critical-line zero at height t.
fn zero_ordinal(t: f64) -> Result<i64> {
    let search = find_zeros((t - 0.25).max(9.0), t + 0.25)?;
    search
        .zeros
        .iter()
        .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
        .filter(|z| (z.t - t).abs() < 1e-6)
        .map(|z| z.ordinal)
        .ok_or_else(|| Error::NonConvergence(format!("no critical-line zero found at height {t}")))
}

fn require_zeta(oracle: &dyn FunctionOracle) -> Result<()> {
    if oracle.id() != OracleId::Zeta {
        return Err(Error::Domain(format!("sheets are defined for zeta, not {}", oracle.name())));
    }
    Ok(())
}

/// Traces the parallel line k (height ≈ kπ/log 2 on the right) from σ = 10
/// to σ = −1.
pub fn trace_parallel(k: i64, oracle: &dyn FunctionOracle) -> Result<ParallelTrace> {
    require_zeta(oracle)?;
    if k < 1 {
        return Err(Error::Domain(format!("parallel lines are numbered from 1, got {k}")));
    }
    let start = Complex64::new(PARALLEL_START, k as f64 * PI / LN_2);
    let w = walk(oracle, start, Complex64::new(-1.0, 0.0), PARALLEL_START + 0.5)?;
    let t_right = w.points[0].s.im;
    let t_critical = w
        .points
        .windows(2)
        .find(|p| p[0].s.re > 0.5 && p[1].s.re <= 0.5)
        .map(|p| p[0].s.im + (0.5 - p[0].s.re) / (p[1].s.re - p[0].s.re) * (p[1].s.im - p[0].s.im));
    let t_at_minus_one = match w.end {
        End::Left(t) => Some(t),
        _ => None,
    };
    Ok(ParallelTrace {
        k,
        t_right,
        t_critical,
        t_at_minus_one,
        line_number: t_at_minus_one.and_then(|t| line_number(t).ok()),
        zero: w.zero.map(point),
        curve: polyline(&w.points),
    })
}

/// Traces the sheet containing the Gram point gₙ (n ≥ −1).
pub fn trace_sheet(gram_index: i64, oracle: &dyn FunctionOracle) -> Result<Sheet> {
    require_zeta(oracle)?;
    let g = gram_abscissa(gram_index)?;
    let s0 = Complex64::new(0.5, g);
    let v0 = oracle.eval(s0)?.value.re;
    let fp = derivative(oracle, s0, 1e-6)?;
    let up = tangent(CurveKind::Thick, fp);
    // Toward the zero: the direction in which |f| decreases.
    let down = if v0 > 0.0 { -up } else { up };
    let a = walk(oracle, s0, down, RIGHT_EXIT)?;
    let b = walk(oracle, s0, -down, RIGHT_EXIT)?;
    let number = |e: &End| match e {
        End::Left(t) => line_number(*t).ok(),
        _ => None,
    };
    let mut curve_pts: Vec<TracePoint> = b.points.iter().rev().copied().collect();
    curve_pts.extend(a.points.iter().skip(1).copied());
    let mut curves = vec![polyline(&curve_pts)];
    let mut note = None;
    let (zero, numbers, parallel) = if let Some(z) = a.zero {
        let pair = match (number(&a.end), number(&b.end)) {
            (Some(x), Some(y)) => Some((x.min(y), x.max(y))),
            // Zero-carrying parallel: its partner is the zero-free one below.
            (Some(x), None) if matches!(b.end, End::Right(_)) => Some((x - 2, x)),
            _ => None,
        };
        (Some(z), pair, matches!(b.end, End::Right(_)))
    } else if let End::Right(t) = a.end {
        let k = (t * LN_2 / PI).round() as i64;
        let above = trace_parallel(k + 1, oracle)?;
        let pair = match (number(&b.end), above.line_number) {
            (Some(x), Some(y)) => Some((x.min(y), x.max(y))),
            _ => None,
        };
        if above.zero.is_none() {
            note = Some(format!("parallel {} above the Gram point carries no zero", k + 1));
        }
        let z = above.zero.map(|p| p.to_complex());
        curves.push(above.curve);
        (z, pair, true)
    } else {
        note = Some("zero not found before the curve left the traced region".into());
        (None, None, false)
    };
    let zero_ordinal = match zero {
        Some(z) if (z.re - 0.5).abs() < 1e-6 => Some(zero_ordinal(z.im)?),
        Some(z) => {
            note = Some(format!("sheet zero {z} is off the critical line"));
            None
        }
        None => None,
    };
    Ok(Sheet {
        gram_index,
        gram_point: g,
        curves,
        zero: zero.map(point),
        zero_ordinal,
        line_numbers: numbers,
        parallel,
        note,
    })
}

/// Sheets of the Gram points n_lo ≤ n < n_hi, in order.
pub fn sheet_permutation(n_lo: i64, n_hi: i64, oracle: &dyn FunctionOracle) -> Result<Vec<Sheet>> {
    if n_lo < -1 || n_hi <= n_lo {
        return Err(Error::Domain(format!("need -1 <= n_lo < n_hi, got {n_lo}..{n_hi}")));
    }
    (n_lo..n_hi).into_par_iter().map(|n| trace_sheet(n, oracle)).collect()
}
