use num_complex::Complex64;

use super::CurveKind;
use crate::error::{Error, Result};
use crate::special::FunctionOracle;

/// f'(s) by a central difference of step `d`.
pub(crate) fn derivative(oracle: &dyn FunctionOracle, s: Complex64, d: f64) -> Result<Complex64> {
    let a = oracle.eval(s + d)?.value;
    let b = oracle.eval(s - d)?.value;
    Ok((a - b) / (2.0 * d))
}

/// Unit tangent of a `kind` curve at a point with derivative `fp`, oriented so
/// that the non-vanishing component increases.
pub(crate) fn tangent(kind: CurveKind, fp: Complex64) -> Complex64 {
    let t = match kind {
        CurveKind::Thick => fp.conj(),
        CurveKind::Thin => Complex64::i() * fp.conj(),
    };
    t / t.norm()
}

/// Newton correction moving `s` across a `kind` level set along the gradient
/// of the vanishing component.
fn newton_step(kind: CurveKind, value: Complex64, fp: Complex64) -> Complex64 {
    let n2 = fp.norm_sqr();
    match kind {
        CurveKind::Thin => -value.re * fp.conj() / n2,
        CurveKind::Thick => -value.im * Complex64::i() * fp.conj() / n2,
    }
}

/// Result of projecting a point onto a level set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub point: Complex64,
    pub value: Complex64,
    /// |vanishing component| at `point`.
    pub residual: f64,
    pub tolerance: f64,
    pub iterations: u32,
}

const MAX_NEWTON: u32 = 8;

/// Newton projection of `s0` onto the `kind` curve. `scale` is the local
/// length scale: the finite-difference step is 1e−5·scale and the residual
/// target 1e−9·|f'|·scale (never below twice the oracle's error bound).
/// Returns None when Newton stalls or wanders farther than `max_move`.
pub fn newton_project(
    oracle: &dyn FunctionOracle,
    kind: CurveKind,
    s0: Complex64,
    scale: f64,
    max_move: f64,
) -> Option<Projection> {
    let d = 1e-5 * scale;
    let mut s = s0;
    for it in 0..=MAX_NEWTON {
        let r = oracle.eval(s).ok()?;
        let fp = derivative(oracle, s, d).ok()?;
        if !(fp.norm() > 0.0) || !fp.re.is_finite() {
            return None;
        }
        let tol = (1e-9 * fp.norm() * scale).max(2.0 * r.error_bound).max(f64::MIN_POSITIVE);
        let res = kind.component(r.value).abs();
        if res < tol {
            return Some(Projection { point: s, value: r.value, residual: res, tolerance: tol, iterations: it });
        }
        if it == MAX_NEWTON {
            break;
        }
        s += newton_step(kind, r.value, fp);
        if (s - s0).norm() > max_move || !s.re.is_finite() || !s.im.is_finite() {
            return None;
        }
    }
    None
}

/// Step-size policy for curve continuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceConfig {
    pub h0: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
    /// Length scale handed to the corrector.
    pub scale: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { h0: 0.05, h_min: 1e-6, h_max: 0.2, max_steps: 200_000, scale: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub s: Complex64,
    pub value: Complex64,
    /// Unit direction of travel at `s`.
    pub direction: Complex64,
    pub step: f64,
}

/// Observer verdict after each accepted point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

/// Predictor-corrector continuation along a `kind` curve from `start` (which
/// is projected first), initially heading as close to `heading` as the curve
/// allows. The step is halved when the corrector needs more than 4 Newton
/// steps, fails, turns by more than 60°, or the varying component does not
/// move the expected way; it is doubled (up to `h_max`) after 1-step
/// corrections. The observer sees every accepted point, including the first.
/// Stops with `Error::NonConvergence` when the step falls below `h_min`.
pub fn trace_curve<F>(
    oracle: &dyn FunctionOracle,
    kind: CurveKind,
    start: Complex64,
    heading: Complex64,
    config: &TraceConfig,
    mut observer: F,
) -> Result<Vec<TracePoint>>
where
    F: FnMut(&TracePoint) -> Control,
{
    let d = 1e-5 * config.scale;
    let p0 = newton_project(oracle, kind, start, config.scale, 10.0 * config.h0)
        .ok_or_else(|| Error::NonConvergence(format!("cannot project {start} onto the {} curve", kind.name())))?;
    let fp = derivative(oracle, p0.point, d)?;
    let sign = if (tangent(kind, fp) * heading.conj()).re >= 0.0 { 1.0 } else { -1.0 };
    let mut cur = TracePoint { s: p0.point, value: p0.value, direction: sign * tangent(kind, fp), step: config.h0 };
    let mut out = vec![cur];
    if observer(&cur) == Control::Stop {
        return Ok(out);
    }
    let mut h = config.h0;
    for _ in 0..config.max_steps {
        let pred = cur.s + cur.direction * h;
        let accepted = newton_project(oracle, kind, pred, config.scale.min(h), 0.5 * h).and_then(|p| {
            if p.iterations > 4 {
                return None;
            }
            let fp = derivative(oracle, p.point, d).ok()?;
            let tan = tangent(kind, fp);
            let chord = p.point - cur.s;
            if chord.norm() == 0.0 {
                return None;
            }
            let chord = chord / chord.norm();
            let cos_turn = (chord * cur.direction.conj()).re;
            if cos_turn < 0.5 {
                return None;
            }
            // The varying component must move the way the orientation says.
            let dv = kind.other_component(p.value) - kind.other_component(cur.value);
            if dv * sign < 0.0 && dv.abs() > 4.0 * p.tolerance {
                return None;
            }
            if (tan * chord.conj()).re * sign < 0.0 {
                return None;
            }
            Some((p, sign * tan))
        });
        match accepted {
            Some((p, dir)) => {
                cur = TracePoint { s: p.point, value: p.value, direction: dir, step: h };
                out.push(cur);
                if observer(&cur) == Control::Stop {
                    return Ok(out);
                }
                if p.iterations <= 1 {
                    h = (2.0 * h).min(config.h_max);
                }
            }
            None => {
                h *= 0.5;
                if h < config.h_min {
                    return Err(Error::NonConvergence(format!(
                        "continuation stalled near {} after {} points",
                        cur.s,
                        out.len()
                    )));
                }
            }
        }
    }
    Err(Error::NonConvergence(format!("continuation exceeded {} steps", config.max_steps)))
}
