use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::zeta::{theta_unchecked, zeta_euler_maclaurin};

/// Lowest height accepted by the counting functions.
pub const MIN_COUNT_T: f64 = 9.0;

const START_SIGMA: f64 = 10.0;
const MAX_PHASE_STEP: f64 = PI / 4.0;
const MIN_STEP: f64 = 1e-9;
const MAX_STEP: f64 = 0.5;
const WALK_TARGET: f64 = 1e-10;

/// S(T) and N(T) at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SReport {
    pub t: f64,
    /// Number of zeros with 0 < γ ≤ T, from the argument walk.
    pub n_of_t: i64,
    /// n_of_t − θ(T)/π − 1.
    pub s_value: f64,
    /// Argument change of ζ along σ + iT, σ from 10 down to 1/2, divided by π.
    pub s_walk: f64,
    pub theta: f64,
}

fn zeta_at(sigma: f64, t: f64) -> Result<Complex64> {
    Ok(zeta_euler_maclaurin(ComplexPoint { re: sigma, im: t }, WALK_TARGET)?.value)
}

fn wrap(d: f64) -> f64 {
    let mut d = d % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d < -PI {
        d += 2.0 * PI;
    }
    d
}

/// arg ζ(1/2 + iT) by continuous variation from σ = 10 (where ζ is within
/// 2·10⁻³ of 1 in argument), steps halved whenever the phase moves by more
/// than π/4 between samples.
pub(crate) fn arg_walk(t: f64) -> Result<f64> {
    let mut sigma = START_SIGMA;
    let mut prev = zeta_at(sigma, t)?;
    let mut arg = prev.arg();
    let mut h: f64 = 0.25;
    while sigma > 0.5 {
        let next_sigma = (sigma - h).max(0.5);
        let v = zeta_at(next_sigma, t)?;
        if v.norm() == 0.0 {
            return Err(Error::Precision(format!("ζ vanishes on the segment at σ = {next_sigma}, t = {t}")));
        }
        let d = wrap(v.arg() - prev.arg());
        if d.abs() > MAX_PHASE_STEP {
            h *= 0.5;
            if h < MIN_STEP {
                return Err(Error::Precision(format!(
                    "argument walk at t = {t} stalled near σ = {sigma}; perturb t off the zero"
                )));
            }
            continue;
        }
        arg += d;
        sigma = next_sigma;
        prev = v;
        if d.abs() < MAX_PHASE_STEP / 4.0 {
            h = (2.0 * h).min(MAX_STEP);
        }
    }
    Ok(arg)
}

/// S(T) by the argument walk, with N(T) from N = θ/π + 1 + S.
pub fn s_of_t(t: f64) -> Result<SReport> {
    if !t.is_finite() || t < MIN_COUNT_T {
        return Err(Error::Domain(format!("S(T) needs T >= {MIN_COUNT_T}, got {t}")));
    }
    let s_walk = arg_walk(t)? / PI;
    let theta = theta_unchecked(t);
    let n = (theta / PI + 1.0 + s_walk).round();
    Ok(SReport { t, n_of_t: n as i64, s_value: n - theta / PI - 1.0, s_walk, theta })
}

/// N(T): the number of zeros with 0 < γ ≤ T.
pub fn count_n(t: f64) -> Result<i64> {
    Ok(s_of_t(t)?.n_of_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_n(10.0).unwrap(), 0);
        assert_eq!(count_n(14.0).unwrap(), 0);
        assert_eq!(count_n(14.2).unwrap(), 1);
        assert_eq!(count_n(50.0).unwrap(), 10);
        assert_eq!(count_n(100.0).unwrap(), 29);
        assert_eq!(count_n(200.0).unwrap(), 79);
        assert!(s_of_t(5.0).is_err());
    }

    #[test]
    fn walk_close_to_identity() {
        for t in [30.0, 77.7, 150.0, 1234.5] {
            let r = s_of_t(t).unwrap();
            assert!((r.s_walk - r.s_value).abs() < 1e-6, "{t}: {} vs {}", r.s_walk, r.s_value);
        }
    }
}
